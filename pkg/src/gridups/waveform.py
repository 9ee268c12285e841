"""Uniformly sampled waveform container and window utilities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Waveform:
    """One named electrical signal sampled at a fixed step.

    Sample i sits at ``t0 + i * dt``.  The sample array is made read-only
    so results can be shared across analyses without copying.
    """

    name: str
    dt: float
    t0: float
    samples: np.ndarray

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a non-empty 1-D array")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return self.dt * (self.samples.size - 1)


def steady_state_window(w: Waveform, f0: float, cycles: int) -> Waveform:
    """Trailing slice spanning exactly ``cycles`` fundamental periods.

    The slice length is round(cycles / (f0 * dt)) samples, so the window
    covers an integer number of cycles up to one sample of rounding.
    """
    if cycles < 1:
        raise ValueError(f"cycles must be >= 1, got {cycles}")
    if f0 <= 0:
        raise ValueError("fundamental frequency must be positive")
    n = int(round(cycles / (f0 * w.dt)))
    if n < 1 or n > len(w):
        raise ValueError(
            f"waveform {w.name!r} ({len(w)} samples) too short for "
            f"{cycles} cycle(s) of {f0} Hz at dt={w.dt}"
        )
    start = len(w) - n
    return Waveform(
        name=w.name,
        dt=w.dt,
        t0=w.t0 + start * w.dt,
        samples=w.samples[start:],
    )


def slice_window(w: Waveform, t_start: float, t_end: float) -> Waveform:
    """Samples with t_start <= t < t_end (grid-snapped)."""
    i0 = max(0, int(np.ceil((t_start - w.t0) / w.dt - 1e-9)))
    i1 = min(len(w), int(np.ceil((t_end - w.t0) / w.dt - 1e-9)))
    if i1 <= i0:
        raise ValueError(f"window [{t_start}, {t_end}) selects no samples")
    return Waveform(w.name, w.dt, w.t0 + i0 * w.dt, w.samples[i0:i1])


def by_name(waveforms) -> dict:
    """Index a waveform collection by signal name."""
    return {w.name: w for w in waveforms}
