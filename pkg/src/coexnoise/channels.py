"""Classical and quantum channel descriptions."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .units import Frequency, Power, PowerDensity

Direction = Literal["co", "counter"]
DIRECTIONS = ("co", "counter")


def check_direction(direction: str) -> str:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be 'co' or 'counter', got {direction!r}")
    return direction


@dataclass(frozen=True)
class PumpChannel:
    """A classical channel: either a CW tone (``power``) or a flat slab of
    spectral loading (``psd`` over ``bandwidth_ghz``, e.g. shaped ASE).

    ``direction`` is relative to the quantum signal.
    """

    frequency: Frequency
    power: Power | None = None
    psd: PowerDensity | None = None
    bandwidth_ghz: float | None = None
    direction: Direction = "co"
    name: str = ""

    def __post_init__(self):
        check_direction(self.direction)
        if (self.power is None) == (self.psd is None):
            raise ValueError(f"channel {self.label}: give either a CW power or a PSD with bandwidth")
        if self.psd is not None and not (self.bandwidth_ghz is not None and self.bandwidth_ghz > 0):
            raise ValueError(f"channel {self.label}: shaped loading needs bandwidth > 0 GHz")

    @property
    def label(self) -> str:
        return self.name or f"{self.frequency.thz:.4f} THz"

    @property
    def is_cw(self) -> bool:
        return self.power is not None

    @property
    def total_power_w(self) -> float:
        if self.power is not None:
            return self.power.watts
        return self.psd.w_per_hz * self.bandwidth_ghz * 1e9

    @property
    def band_thz(self) -> tuple[float, float]:
        half = 0.5 * (self.bandwidth_ghz or 0.0) * 1e-3
        return self.frequency.thz - half, self.frequency.thz + half

    def slices(self, step_ghz: float = 100.0) -> list[tuple[Frequency, float]]:
        """Discretize into ``(center, power_w)`` pieces no wider than ``step_ghz``."""
        if self.is_cw:
            return [(self.frequency, self.power.watts)]
        if not step_ghz > 0:
            raise ValueError("slice step must be > 0 GHz")
        n = max(1, math.ceil(self.bandwidth_ghz / step_ghz - 1e-9))
        width = self.bandwidth_ghz / n
        lo = self.frequency.thz - 0.5 * self.bandwidth_ghz * 1e-3
        p = self.psd.w_per_hz * width * 1e9
        return [(Frequency(lo + (m + 0.5) * width * 1e-3), p) for m in range(n)]

    def scaled(self, factor: float) -> PumpChannel:
        if self.is_cw:
            return replace(self, power=self.power.scaled(factor))
        return replace(self, psd=self.psd.scaled(factor))

    def with_direction(self, direction: Direction) -> PumpChannel:
        return replace(self, direction=direction)


@dataclass(frozen=True)
class QuantumChannel:
    frequency: Frequency
    bandwidth_ghz: float

    def __post_init__(self):
        if not (self.bandwidth_ghz > 0 and math.isfinite(self.bandwidth_ghz)):
            raise ValueError(f"quantum filter bandwidth must be > 0 GHz, got {self.bandwidth_ghz!r}")

    @property
    def bandwidth_hz(self) -> float:
        return self.bandwidth_ghz * 1e9

    def with_frequency(self, frequency: Frequency) -> QuantumChannel:
        return replace(self, frequency=frequency)
