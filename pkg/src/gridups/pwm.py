"""Complementary PWM gate-signal generation.

Gate pairs follow the usual symmetric scheme: within each period T the
high gate conducts on [kT, kT + duty*T - dead_time) and the low gate on
[kT + duty*T, kT + (k+1)T - dead_time).  Sampling is deterministic on the
simulation grid t = t0 + i*dt with half-open interval semantics, which is
also how the switched simulator snaps switching edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GateSignals:
    """Sampled complementary gate pair; never simultaneously true."""

    q_high: np.ndarray
    q_low: np.ndarray
    dt: float

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        qh = np.asarray(self.q_high, dtype=bool)
        ql = np.asarray(self.q_low, dtype=bool)
        if qh.shape != ql.shape:
            raise ValueError("gate arrays must have equal length")
        qh.setflags(write=False)
        ql.setflags(write=False)
        object.__setattr__(self, "q_high", qh)
        object.__setattr__(self, "q_low", ql)


def pwm_generate(
    freq: float,
    duty: float,
    dead_time: float,
    t_end: float,
    dt: float,
    t0: float = 0.0,
) -> GateSignals:
    """Sample a complementary PWM pair over [t0, t0 + t_end].

    Returns floor(t_end/dt) + 1 samples.  The phase within the period is
    computed per sample (not accumulated), so long runs do not drift.
    """
    if not 0.0 <= duty <= 1.0:
        raise ValueError(f"duty must be within [0, 1], got {duty}")
    if freq <= 0:
        raise ValueError("frequency must be positive")
    if dt >= 1.0 / freq:
        raise ValueError(f"dt={dt} must resolve the switching period {1.0 / freq}")
    if dead_time < 0:
        raise ValueError("dead_time must be >= 0")

    period = 1.0 / freq
    n = int(np.floor(t_end / dt + 1e-9)) + 1
    t = t0 + dt * np.arange(n)
    # snap phase; the epsilon keeps t = k*period from landing at period-ulp
    k = np.floor(t / period + 1e-9)
    phase = t - k * period
    t_on_high = duty * period
    q_high = phase < t_on_high - dead_time
    q_low = (phase >= t_on_high) & (phase < period - dead_time)
    return GateSignals(q_high=q_high, q_low=q_low, dt=dt)
