"""Linear state-space models and exact rational transfer-function extraction.

A continuous-time model  dx/dt = A x + B u,  y = C x + D u  is reduced to a
scalar rational transfer function num(s)/den(s) for a selected input/output
channel using the Faddeev-LeVerrier recursion, which produces the
characteristic polynomial and the adjugate polynomial matrices in one sweep.
No symbolic algebra is involved; coefficients are exact up to float rounding
for the small systems this package deals with.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import InvalidModelError, PoleEvaluationError

# Coefficients whose magnitude is below leading-coefficient * TRIM_REL are
# treated as zero when trimming polynomial degree.
TRIM_REL = 1e-12


def _as_matrix(m, name: str) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(m, dtype=float))
    if arr.ndim != 2:
        raise InvalidModelError(f"{name} must be a 2-D matrix, got ndim={arr.ndim}")
    return arr


@dataclass(frozen=True)
class StateSpaceModel:
    """Constant-matrix linear system (A, B, C, D).

    Shapes: A is n x n, B is n x m, C is p x n, D is p x m with
    n, m, p >= 1.  Instances are immutable and safe to share.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d_mat: np.ndarray

    def __post_init__(self):
        a = _as_matrix(self.a, "a")
        b = _as_matrix(self.b, "b")
        c = _as_matrix(self.c, "c")
        d = _as_matrix(self.d_mat, "d_mat")
        n = a.shape[0]
        if a.shape != (n, n):
            raise InvalidModelError(f"a must be square, got {a.shape}")
        if b.shape[0] != n:
            raise InvalidModelError(f"b must have {n} rows, got {b.shape}")
        if c.shape[1] != n:
            raise InvalidModelError(f"c must have {n} columns, got {c.shape}")
        p, m = c.shape[0], b.shape[1]
        if d.shape != (p, m):
            raise InvalidModelError(f"d_mat must be {p}x{m}, got {d.shape}")
        if n < 1 or m < 1 or p < 1:
            raise InvalidModelError("state, input and output counts must be >= 1")
        for nm, arr in (("a", a), ("b", b), ("c", c), ("d_mat", d)):
            arr.setflags(write=False)
            object.__setattr__(self, nm, arr)

    @property
    def n_states(self) -> int:
        return self.a.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.b.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class RationalTransferFunction:
    """Rational function of s with real coefficients, ascending powers.

    ``num[k]`` / ``den[k]`` multiply s**k.  The denominator must keep at
    least one nonzero coefficient after degree trimming.
    """

    num: tuple
    den: tuple

    def __post_init__(self):
        num = _trim(tuple(float(x) for x in self.num))
        den = _trim(tuple(float(x) for x in self.den))
        if not den or all(x == 0.0 for x in den):
            raise InvalidModelError("denominator has no nonzero coefficient")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def normalized(self) -> "RationalTransferFunction":
        """Return the monic-denominator form (leading den coefficient 1)."""
        lead = self.den[-1]
        return RationalTransferFunction(
            tuple(x / lead for x in self.num), tuple(x / lead for x in self.den)
        )

    @property
    def degree(self) -> int:
        return len(self.den) - 1


def _trim(coeffs: tuple) -> tuple:
    if not coeffs:
        return (0.0,)
    ref = max(abs(x) for x in coeffs)
    if ref == 0.0:
        return (0.0,)
    out = list(coeffs)
    while len(out) > 1 and abs(out[-1]) <= TRIM_REL * ref:
        out.pop()
    return tuple(out)


def _polyval(coeffs, s: complex) -> complex:
    """Horner evaluation, ascending coefficients."""
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def tf_from_state_space(
    ss: StateSpaceModel, input_index: int = 0, output_index: int = 0
) -> RationalTransferFunction:
    """Exact scalar transfer function C (sI - A)^-1 B + D for one channel.

    Runs the Faddeev-LeVerrier recursion: with N_0 = I,
        c_{n-k} = -tr(A N_{k-1}) / k,      N_k = A N_{k-1} + c_{n-k} I,
    det(sI - A) = s^n + c_{n-1} s^{n-1} + ... + c_0 and
    adj(sI - A) = sum_k s^{n-1-k} N_k.  The numerator for the selected
    channel is then c_row . adj . b_col + D * charpoly.  The denominator is
    returned monic.
    """
    if not 0 <= input_index < ss.n_inputs:
        raise IndexError(f"input_index {input_index} out of range (m={ss.n_inputs})")
    if not 0 <= output_index < ss.n_outputs:
        raise IndexError(
            f"output_index {output_index} out of range (p={ss.n_outputs})"
        )

    a = ss.a
    n = a.shape[0]
    b_col = ss.b[:, input_index]
    c_row = ss.c[output_index, :]
    d = float(ss.d_mat[output_index, input_index])

    # char[j] multiplies s^j; adj_coeffs[k] multiplies s^(n-1-k)
    char = np.zeros(n + 1)
    char[n] = 1.0
    big_n = np.eye(n)
    adj_terms = [big_n]
    for k in range(1, n + 1):
        an = a @ big_n
        ck = -np.trace(an) / k
        char[n - k] = ck
        big_n = an + ck * np.eye(n)
        if k < n:
            adj_terms.append(big_n)

    num = np.zeros(n + 1)
    for k, term in enumerate(adj_terms):
        num[n - 1 - k] = c_row @ term @ b_col
    num += d * char

    # monic denominator (leading coefficient of charpoly is already 1)
    return RationalTransferFunction(tuple(num), tuple(char))


def evaluate_tf(tf: RationalTransferFunction, s: complex) -> complex:
    """num(s)/den(s) by Horner evaluation; raises on a pole."""
    den = _polyval(tf.den, s)
    num = _polyval(tf.num, s)
    if den == 0 or abs(den) < 1e-300:
        raise PoleEvaluationError(f"denominator vanishes at s={s}")
    return num / den


def dc_gain(tf: RationalTransferFunction) -> float:
    """Transfer-function value at s=0 (real part; imaginary part is 0)."""
    val = evaluate_tf(tf, 0.0)
    return val.real


def frequency_response(tf: RationalTransferFunction, freqs_hz) -> list:
    """(magnitude, phase_rad) of the response at each frequency in Hz."""
    out = []
    for f in freqs_hz:
        s = 1j * 2.0 * np.pi * float(f)
        try:
            val = evaluate_tf(tf, s)
        except PoleEvaluationError as exc:
            raise PoleEvaluationError(
                f"transfer function has a pole at {f} Hz"
            ) from exc
        out.append((abs(val), cmath.phase(val)))
    return out


def average_models(entries) -> StateSpaceModel:
    """Weighted sum of dimension-identical models (duty-cycle averaging).

    For two subinterval models with weights d and (1-d) this is the
    standard state-averaging combination A = d*A1 + (1-d)*A2 etc.
    """
    entries = list(entries)
    if not entries:
        raise ValueError("average_models requires at least one (model, weight)")
    first, _ = entries[0]
    shape_ref = (first.a.shape, first.b.shape, first.c.shape, first.d_mat.shape)
    a = np.zeros_like(first.a)
    b = np.zeros_like(first.b)
    c = np.zeros_like(first.c)
    d = np.zeros_like(first.d_mat)
    for model, weight in entries:
        w = float(weight)
        if w < 0:
            raise ValueError(f"weights must be >= 0, got {w}")
        shapes = (model.a.shape, model.b.shape, model.c.shape, model.d_mat.shape)
        if shapes != shape_ref:
            raise InvalidModelError(
                f"model shapes {shapes} differ from first entry {shape_ref}"
            )
        a = a + w * model.a
        b = b + w * model.b
        c = c + w * model.c
        d = d + w * model.d_mat
    return StateSpaceModel(a, b, c, d)
