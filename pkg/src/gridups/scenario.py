"""Full-system scenario: every component value, PWM setting and
supervisory setting needed to run the switched simulator.

Default values follow the reference hardware: 230 V / 50 Hz mains, a
230:12 step-down transformer feeding a diode bridge with a 0.1 mH /
500 uF filter, a 0.95 mH / 47 uF boost charger switched at 40 kHz, a
12 V battery, a 4-switch push-pull inverter (225 ohm / 10 nF snubbers)
into a 12:230 center-tapped step-up transformer, a 21.2 mH / 470 uF
output filter and a 500 ohm + 27 mH load.

The default grid schedule drops the mains at t = 0.3 s so a single run
exercises both regimes: grid-fed load with the charger active, then the
inverter carrying the load after the transfer switch operates.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Tuple

from .errors import ConfigError
from .models import BoostParams, InverterParams, RectifierParams

TX_RATIO_DEFAULT = 230.0 / 12.0


@dataclass(frozen=True)
class GridSettings:
    v_rms: float = 230.0
    f0: float = 50.0
    # (time, available) pairs, sorted, first entry at t=0
    available_schedule: Tuple[Tuple[float, bool], ...] = ((0.0, True), (0.3, False))


@dataclass(frozen=True)
class OutputFilter:
    l_o: float = 21.2e-3
    c_o: float = 470e-6


@dataclass(frozen=True)
class LoadParams:
    r: float = 500.0
    l: float = 27e-3


@dataclass(frozen=True)
class PwmSettings:
    """Inverter-leg drive; the boost PWM lives on BoostParams (duty, f_sw)."""

    f_inv: float = 50.0
    duty_inv: float = 0.5
    dead_time: float = 0.0


@dataclass(frozen=True)
class SupervisorySettings:
    transfer_time: float = 4e-3
    v_ref: float = 12.0
    v_sat: float = 12.0
    hysteresis: float = 0.0


@dataclass(frozen=True)
class SimSettings:
    t_end: float = 0.5
    dt: float = 250e-9


@dataclass(frozen=True)
class Scenario:
    grid: GridSettings = field(default_factory=GridSettings)
    tx1_ratio: float = TX_RATIO_DEFAULT  # primary:secondary, steps 230 down to 12
    rectifier: RectifierParams = field(
        default_factory=lambda: RectifierParams(l_r=0.1e-3, c_r=500e-6)
    )
    boost: BoostParams = field(
        default_factory=lambda: BoostParams(
            l_c=0.95e-3, c_c=47e-6, r_c=10.0, duty=0.5, f_sw=40e3
        )
    )
    battery_v: float = 12.0
    battery_r: float = 0.0  # series resistance of the battery, 0 = ideal source
    inverter: InverterParams = field(
        default_factory=lambda: InverterParams(
            n=TX_RATIO_DEFAULT,
            duty=0.5,
            r_on=0.1,
            r_i=500.0 / (TX_RATIO_DEFAULT**2 * 0.25),
            r_o=500.0,
            f_sw=50.0,
        )
    )
    snubber_r: float = 225.0  # per switch, series element of the RC snubber
    snubber_c: float = 10e-9  # per switch
    tx2_ratio: float = TX_RATIO_DEFAULT  # secondary per half-primary, steps 12 up to 230
    output_filter: OutputFilter = field(default_factory=OutputFilter)
    load: LoadParams = field(default_factory=LoadParams)
    pwm: PwmSettings = field(default_factory=PwmSettings)
    supervisory: SupervisorySettings = field(default_factory=SupervisorySettings)
    sim: SimSettings = field(default_factory=SimSettings)

    def validate(self) -> None:
        """Raise ConfigError on any invariant violation."""
        g, s, p = self.grid, self.sim, self.pwm
        if g.v_rms < 0:
            raise ConfigError("grid voltage must be >= 0")
        if g.f0 <= 0:
            raise ConfigError("grid frequency must be positive")
        if not g.available_schedule or g.available_schedule[0][0] != 0.0:
            raise ConfigError("availability schedule must start at t=0")
        times = [t for t, _ in g.available_schedule]
        if times != sorted(times):
            raise ConfigError("availability schedule times must be ascending")
        if s.dt <= 0:
            raise ConfigError("sim timestep must be positive")
        if s.dt > 1.0 / (20.0 * self.boost.f_sw):
            raise ConfigError(
                f"dt={s.dt} too coarse: need >= 20 samples per boost switching "
                f"period ({1.0 / self.boost.f_sw})"
            )
        if s.t_end < 10.0 / g.f0:
            raise ConfigError(
                f"t_end={s.t_end} shorter than 10 fundamental cycles "
                f"({10.0 / g.f0})"
            )
        for name, val in (
            ("tx1_ratio", self.tx1_ratio),
            ("tx2_ratio", self.tx2_ratio),
            ("battery_v", self.battery_v),
            ("snubber_r", self.snubber_r),
            ("snubber_c", self.snubber_c),
            ("output_filter.l_o", self.output_filter.l_o),
            ("output_filter.c_o", self.output_filter.c_o),
            ("load.r", self.load.r),
            ("load.l", self.load.l),
            ("pwm.f_inv", p.f_inv),
            ("supervisory.transfer_time", self.supervisory.transfer_time),
        ):
            if val <= 0:
                raise ConfigError(f"{name} must be positive, got {val}")
        if self.battery_r < 0:
            raise ConfigError("battery_r must be >= 0")
        if not 0.0 <= p.duty_inv <= 1.0:
            raise ConfigError(f"inverter duty must be in [0,1], got {p.duty_inv}")
        min_period = min(1.0 / self.boost.f_sw, 1.0 / p.f_inv)
        if not 0.0 <= p.dead_time < min_period / 2.0:
            raise ConfigError(
                f"dead_time must be in [0, {min_period / 2.0}), got {p.dead_time}"
            )

    def with_sim(self, **kwargs) -> "Scenario":
        return replace(self, sim=replace(self.sim, **kwargs))


def default_scenario() -> Scenario:
    sc = Scenario()
    sc.validate()
    return sc
