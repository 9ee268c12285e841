"""Averaged converter models: diode-bridge rectifier with LC filter,
PWM boost charger, the cascaded charging chain, and the 4-switch
push-pull inverter.

The rectifier and boost stages are expressed both as per-subinterval
state-space models and as closed-form transfer functions; the two routes
must agree and the test suite checks them against each other.  The
inverter is a switching-converter average: quasi-square drive through an
ideal center-tapped transformer, reduced to output voltage, voltage gain
and power efficiency as functions of turns ratio and duty ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sstf import RationalTransferFunction, StateSpaceModel


@dataclass(frozen=True)
class RectifierParams:
    """Bridge-rectifier output filter: series inductance, shunt capacitance."""

    l_r: float  # H
    c_r: float  # F

    def __post_init__(self):
        if self.l_r <= 0 or self.c_r <= 0:
            raise ValueError("rectifier L and C must be positive")


@dataclass(frozen=True)
class BoostParams:
    """Boost charger component values and operating point."""

    l_c: float  # H
    c_c: float  # F
    r_c: float  # ohm, charging load on the output port
    duty: float  # (0, 1)
    f_sw: float  # Hz

    def __post_init__(self):
        if min(self.l_c, self.c_c, self.r_c, self.f_sw) <= 0:
            raise ValueError("boost component values must be positive")
        if not 0.0 < self.duty < 1.0:
            raise ValueError(f"boost duty must be in (0,1), got {self.duty}")


@dataclass(frozen=True)
class InverterParams:
    """Push-pull inverter equivalent: turns ratio, duty, resistances."""

    n: float  # secondary/primary turns ratio
    duty: float  # (0, 1]
    r_on: float  # ohm, closed-switch resistance
    r_i: float  # ohm, input port resistance V_i/I_i
    r_o: float  # ohm, output load resistance
    f_sw: float  # Hz

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("turns ratio must be positive")
        if not 0.0 < self.duty <= 1.0:
            raise ValueError(f"inverter duty must be in (0,1], got {self.duty}")
        if self.r_on < 0:
            raise ValueError("switch on-resistance must be >= 0")
        if self.r_i <= 0 or self.r_o <= 0:
            raise ValueError("port resistances must be positive")
        if self.f_sw <= 0:
            raise ValueError("switching frequency must be positive")


@dataclass(frozen=True)
class InverterEfficiency:
    """Efficiency result with an out-of-model flag.

    ``percent`` is the closed-form value n^2 d^2 (V_i - I_i R_on)^2 /
    (R_o V_i I_i) * 100.  Because R_i is an independent scenario input
    rather than being solved self-consistently against the load, the
    formula can exceed 100 %; ``out_of_model`` flags that case.
    ``power_ratio_percent`` is the same quantity computed directly as
    P_out/P_in from the averaged output voltage, kept as a cross-check.
    """

    percent: float
    out_of_model: bool
    power_ratio_percent: float


@dataclass(frozen=True)
class CcmReport:
    """Conduction-mode verdict for the boost stage at a DC operating point."""

    mode: str  # "ccm" or "dcm"
    i_avg: float  # steady-state average inductor current, A
    ripple_half: float  # peak ripple above/below the average, A
    margin: float  # i_avg - ripple_half, A


def rectifier_state_space(p: RectifierParams, polarity: str) -> StateSpaceModel:
    """Per-half-cycle rectifier model; states are (inductor current,
    capacitor voltage), output is the capacitor voltage.

    The negative half-cycle differs from the positive one only in the
    sign of the input map B.
    """
    if polarity not in ("positive", "negative"):
        raise ValueError(f"polarity must be 'positive' or 'negative', got {polarity!r}")
    sign = 1.0 if polarity == "positive" else -1.0
    a = [[0.0, -1.0 / p.l_r], [1.0 / p.c_r, 0.0]]
    b = [[sign / p.l_r], [0.0]]
    c = [[0.0, 1.0]]
    d = [[0.0]]
    return StateSpaceModel(a, b, c, d)


def rectifier_tf(p: RectifierParams) -> RationalTransferFunction:
    """1 / (1 + s^2 L_r C_r): the shared magnitude of both half-cycle
    transfer functions, positive sign convention."""
    return RationalTransferFunction((1.0,), (1.0, 0.0, p.l_r * p.c_r))


def boost_state_space(p: BoostParams, subinterval: str) -> StateSpaceModel:
    """Boost subinterval models.

    'on'  -> switch closed: inductor shorted to the input, output cap
             discharges into the load only.
    'off' -> diode conducting: standard series LC into the load.
    B, C, D are identical for both subintervals.
    """
    if subinterval not in ("on", "off"):
        raise ValueError(f"subinterval must be 'on' or 'off', got {subinterval!r}")
    if subinterval == "on":
        a = [[0.0, 0.0], [0.0, -1.0 / (p.r_c * p.c_c)]]
    else:
        a = [[0.0, -1.0 / p.l_c], [1.0 / p.c_c, -1.0 / (p.r_c * p.c_c)]]
    b = [[1.0 / p.l_c], [0.0]]
    c = [[0.0, 1.0]]
    d = [[0.0]]
    return StateSpaceModel(a, b, c, d)


def boost_averaged_tf(p: BoostParams) -> RationalTransferFunction:
    """Duty-averaged boost transfer function
    (1-d) / (s^2 L_c C_c + s L_c/R_c + (1-d)^2)."""
    d = p.duty
    return RationalTransferFunction(
        (1.0 - d,),
        ((1.0 - d) ** 2, p.l_c / p.r_c, p.l_c * p.c_c),
    )


def charger_tf(r: RectifierParams, b: BoostParams) -> RationalTransferFunction:
    """Cascade of rectifier and boost transfer functions (polynomial
    product); DC gain is 1/(1-d) regardless of component values."""
    gr = rectifier_tf(r)
    gc = boost_averaged_tf(b)
    num = np.polynomial.polynomial.polymul(gr.num, gc.num)
    den = np.polynomial.polynomial.polymul(gr.den, gc.den)
    return RationalTransferFunction(tuple(num), tuple(den))


def inverter_avg_output(p: InverterParams, v_i: float, i_i: float) -> float:
    """Averaged inverter output voltage V_o = n d (V_i - I_i R_on)."""
    if v_i <= 0:
        raise ValueError("input voltage must be positive")
    if i_i < 0:
        raise ValueError("input current must be >= 0")
    return p.n * p.duty * (v_i - i_i * p.r_on)


def inverter_volt_second_residual(
    p: InverterParams, v_i: float, i_i: float, v_o: float
) -> float:
    """Duty-weighted average output-inductor voltage for a candidate V_o.

    During the driven subinterval (weight d) the inductor sees
    n(V_i - I_i R_on) - V_o in the rectified sense; for the remainder
    (weight 1-d) it sees -V_o.  The averaged output voltage is the unique
    zero of this residual.
    """
    driven = p.n * (v_i - i_i * p.r_on) - v_o
    rest = -v_o
    return p.duty * driven + (1.0 - p.duty) * rest


def inverter_gain(p: InverterParams) -> float:
    """Voltage gain G_v = n d (1 - R_on/R_i); reduces to n d for
    lossless switches."""
    return p.n * p.duty * (1.0 - p.r_on / p.r_i)


def inverter_efficiency(p: InverterParams, v_i: float, i_i: float) -> InverterEfficiency:
    """Power efficiency n^2 d^2 (V_i - I_i R_on)^2 / (R_o V_i I_i) * 100.

    Flags (rather than clips) results above 100 %, which occur whenever
    the given R_i is inconsistent with the reflected load.
    """
    if v_i <= 0 or i_i <= 0:
        raise ValueError("input voltage and current must be positive")
    eta = (p.n * p.duty * (v_i - i_i * p.r_on)) ** 2 / (p.r_o * v_i * i_i) * 100.0
    v_o = inverter_avg_output(p, v_i, i_i)
    power_ratio = (v_o * v_o / p.r_o) / (v_i * i_i) * 100.0
    return InverterEfficiency(eta, eta > 100.0, power_ratio)


def ccm_check(p: BoostParams, v_in: float) -> CcmReport:
    """Continuous-conduction verdict from standard boost steady-state
    relations: average inductor current I_L = V_out/((1-d) R_c) with
    V_out = v_in/(1-d), versus peak ripple v_in d/(2 L_c f_sw)."""
    one_minus_d = 1.0 - p.duty
    i_avg = v_in / (one_minus_d * one_minus_d * p.r_c)
    ripple_half = v_in * p.duty / (2.0 * p.l_c * p.f_sw)
    margin = i_avg - ripple_half
    return CcmReport(
        mode="ccm" if margin > 0 else "dcm",
        i_avg=i_avg,
        ripple_half=ripple_half,
        margin=margin,
    )
