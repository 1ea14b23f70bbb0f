"""Leakage into the quantum band that scales linearly with classical power.

Counter-propagating leakage reaches the receiver only through Rayleigh
backscattering; co-propagating leakage is simply attenuated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import Direction, QuantumChannel, check_direction
from .profiles import FiberSpec
from .units import PowerDensity


class DirectionMisuseError(ValueError):
    pass


@dataclass(frozen=True)
class LeakageSource:
    """In-band PSD at the quantum frequency, at the classical transmitter output."""

    psd: PowerDensity
    direction: Direction = "counter"
    name: str = ""

    def __post_init__(self):
        check_direction(self.direction)

    def scaled(self, factor: float) -> LeakageSource:
        return LeakageSource(self.psd.scaled(factor), self.direction, self.name)


def rayleigh_backscatter(source: LeakageSource, fiber: FiberSpec, quantum: QuantumChannel) -> float:
    """Backscattered PSD (W/Hz) returning to the launch end."""
    if source.direction != "counter":
        raise DirectionMisuseError("Rayleigh backscatter applies to counter-propagating leakage only")
    alpha = fiber.alpha(quantum.frequency)
    x = 2.0 * alpha * fiber.length_km
    collected = fiber.length_km * (1.0 - x / 2.0) if x < 1e-6 else -math.expm1(-x) / (2.0 * alpha)
    return source.psd.w_per_hz * fiber.rayleigh_per_km * collected


def copropagated_leakage(source: LeakageSource, fiber: FiberSpec, quantum: QuantumChannel) -> float:
    """Leakage PSD (W/Hz) surviving to the far end."""
    if source.direction != "co":
        raise DirectionMisuseError("co-propagated leakage applies to co-propagating sources only")
    return source.psd.w_per_hz * math.exp(-fiber.alpha(quantum.frequency) * fiber.length_km)
