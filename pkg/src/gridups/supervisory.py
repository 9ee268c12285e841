"""Supervisory relay logic: the grid/inverter changeover transfer switch
and the comparator-driven battery charge controller.

Both are pure state-transition functions over small immutable records;
the simulation engine sequences them, and they can be exercised
standalone for exhaustive state-machine checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Optional, Tuple

GRID = "grid"
INVERTER = "inverter"

# Electromechanical changeover relays of this class operate in 3-5 ms;
# values outside the band are allowed but warned about.
TRANSFER_TIME_BAND = (3e-3, 5e-3)


@dataclass(frozen=True)
class TransferSwitchState:
    """Changeover (break-before-make) transfer switch.

    ``pole`` is the contact the armature last sat on or departed from;
    while ``pending`` is set the armature is in flight and the load is
    open-circuited.  A reversal mid-flight relabels the departure side as
    the abandoned destination, so ``pending.target != pole`` always holds.
    """

    energized: bool = True
    pole: str = GRID
    pending: Optional[Tuple[str, float]] = None  # (target, t_complete)
    t_last: float = 0.0

    def __post_init__(self):
        if self.pole not in (GRID, INVERTER):
            raise ValueError(f"pole must be grid/inverter, got {self.pole!r}")
        if self.pending is not None:
            target, t_complete = self.pending
            if target == self.pole:
                raise ValueError("pending target equals current pole")
            if target not in (GRID, INVERTER):
                raise ValueError(f"bad pending target {target!r}")

    @property
    def in_flight(self) -> bool:
        return self.pending is not None

    @property
    def load_connected_to(self) -> Optional[str]:
        """Contact the load sees, or None while the armature travels."""
        return None if self.pending is not None else self.pole


def transfer_switch_step(
    state: TransferSwitchState,
    grid_available: bool,
    t: float,
    transfer_time: float = 4e-3,
) -> TransferSwitchState:
    """Advance the transfer switch to time ``t`` given grid availability.

    A mismatch between the desired contact (grid when available, inverter
    otherwise) and the seated pole schedules a transition completing at
    ``t + transfer_time``; the pole only changes at completion, and the
    load is open for the whole flight.  If availability flips back while
    a transition is pending, the transition is cancelled and the reverse
    trip is scheduled from scratch.
    """
    if t < state.t_last:
        raise ValueError(f"time runs backwards: {t} < {state.t_last}")
    lo, hi = TRANSFER_TIME_BAND
    if not lo <= transfer_time <= hi:
        warnings.warn(
            f"transfer_time {transfer_time * 1e3:.3g} ms outside the "
            f"{lo * 1e3:.0f}-{hi * 1e3:.0f} ms relay operating band",
            stacklevel=2,
        )

    pole = state.pole
    pending = state.pending

    # complete a transition whose travel time has elapsed
    if pending is not None and t >= pending[1]:
        pole = pending[0]
        pending = None

    desired = GRID if grid_available else INVERTER
    if pending is None:
        if desired != pole:
            pending = (desired, t + transfer_time)
    elif pending[0] != desired:
        # reversal mid-flight: depart from the abandoned destination side
        pole = pending[0]
        pending = (desired, t + transfer_time)

    return replace(
        state,
        energized=grid_available,
        pole=pole,
        pending=pending,
        t_last=t,
    )


@dataclass(frozen=True)
class ChargeControllerState:
    """SPDT charging relay driven by an ideal comparator.

    The comparator compares the sensed battery voltage against ``v_ref``
    and saturates at +/- ``v_sat``; positive output energizes the relay
    and connects the battery to the charger.  ``hysteresis`` (default 0,
    the ideal comparator) widens the toggle band to suppress chatter.
    """

    v_ref: float = 12.0
    v_sat: float = 12.0
    connected: bool = False
    hysteresis: float = 0.0

    def __post_init__(self):
        if self.v_ref <= 0:
            raise ValueError("v_ref must be positive")
        if self.v_sat <= 0:
            raise ValueError("v_sat must be positive")
        if self.hysteresis < 0:
            raise ValueError("hysteresis must be >= 0")


def comparator_output(v_bat: float, v_ref: float, v_sat: float) -> float:
    """-v_sat when v_bat >= v_ref (inclusive), +v_sat when v_bat < v_ref."""
    if v_sat <= 0:
        raise ValueError("v_sat must be positive")
    return -v_sat if v_bat >= v_ref else v_sat


def charge_controller_step(
    state: ChargeControllerState, v_bat: float
) -> ChargeControllerState:
    """Connect the battery to the charger iff the comparator output is
    positive (battery below reference), with optional hysteresis."""
    if state.hysteresis == 0.0:
        connected = comparator_output(v_bat, state.v_ref, state.v_sat) > 0
    elif v_bat >= state.v_ref + state.hysteresis:
        connected = False
    elif v_bat < state.v_ref - state.hysteresis:
        connected = True
    else:
        connected = state.connected
    return replace(state, connected=connected)
