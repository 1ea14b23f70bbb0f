"""Spontaneous Raman scattering noise collected by the quantum receiver.

Attenuation is taken as uniform along the fiber and evaluated at each
wavelength from the fiber's attenuation profile. Co-propagating noise is
collected at the far end (z = L), counter-propagating noise at the pump's
launch end (z = 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .channels import PumpChannel, QuantumChannel
from .profiles import FiberSpec, ProfileRangeError
from .units import BOLTZMANN, PLANCK, Frequency

DEFAULT_STEP_GHZ = 100.0
# below this |x| the closed forms switch to their Taylor series
SERIES_THRESHOLD = 1e-6


class ChannelRangeError(ProfileRangeError):
    """Profile coverage failure attributed to one classical channel."""

    def __init__(self, channel: str, message: str):
        super().__init__(f"channel '{channel}': {message}")
        self.channel = channel


def antistokes_scale(shift_thz: float, temperature_k: float) -> float:
    """Ratio of anti-Stokes to Stokes efficiency at the same shift magnitude.

    >>> round(antistokes_scale(13.2, 295.0), 3)
    0.117
    """
    if shift_thz < 0:
        raise ValueError("shift magnitude must be >= 0")
    if not temperature_k > 0:
        raise ValueError("temperature must be > 0 K")
    return math.exp(-PLANCK * shift_thz * 1e12 / (BOLTZMANN * temperature_k))


def raman_efficiency(fiber: FiberSpec, pump: Frequency, quantum: Frequency) -> tuple[float, bool]:
    """Efficiency in km^-1 GHz^-1 for scattering from ``pump`` into ``quantum``.

    Returns ``(rho, synthesized)``. When the table lacks the required side
    entirely, the value is mirrored from the other side with the thermal
    population ratio and ``synthesized`` is True.
    """
    profile = fiber.sprs
    shift_ghz = (quantum.thz - pump.thz) * 1e3
    pump_wl = pump.to_wavelength()
    side = "stokes" if shift_ghz < 0 else "anti-stokes"
    if shift_ghz == 0 or profile.has_side(side):
        return profile.lookup(pump_wl, shift_ghz), False
    other = "anti-stokes" if side == "stokes" else "stokes"
    if not profile.has_side(other):
        raise ProfileRangeError(f"{profile.name}: no samples on either side of the pump")
    mirrored = profile.lookup(pump_wl, -shift_ghz)
    scale = antistokes_scale(abs(shift_ghz) * 1e-3, fiber.temperature_k)
    if side == "anti-stokes":
        return mirrored * scale, True
    return mirrored / scale, True


def _decay_integral(rate: float, length: float) -> float:
    """(1 - exp(-rate * length)) / rate, continuous through rate = 0."""
    x = rate * length
    if abs(x) < SERIES_THRESHOLD:
        return length * (1.0 - x / 2.0 + x * x / 6.0)
    return -math.expm1(-x) / rate


def co_interaction_length(alpha_pump: float, alpha_quantum: float, length_km: float) -> float:
    """Effective length (km) of co-propagating generation, including loss to z = L."""
    return math.exp(-alpha_quantum * length_km) * _decay_integral(alpha_pump - alpha_quantum, length_km)


def counter_interaction_length(alpha_pump: float, alpha_quantum: float, length_km: float) -> float:
    """Effective length (km) of counter-propagating generation, collected at z = 0."""
    return _decay_integral(alpha_pump + alpha_quantum, length_km)


def _channel_sprs(
    pump: PumpChannel, quantum: QuantumChannel, fiber: FiberSpec, direction: str, step_ghz: float
) -> tuple[float, bool]:
    try:
        alpha_q = fiber.alpha(quantum.frequency)
        total = 0.0
        synthesized = False
        for f, p in pump.slices(step_ghz):
            rho, synth = raman_efficiency(fiber, f, quantum.frequency)
            synthesized |= synth
            alpha_p = fiber.alpha(f)
            if direction == "co":
                leff = co_interaction_length(alpha_p, alpha_q, fiber.length_km)
            else:
                leff = counter_interaction_length(alpha_p, alpha_q, fiber.length_km)
            total += p * rho * quantum.bandwidth_ghz * leff
    except ProfileRangeError as exc:
        raise ChannelRangeError(pump.label, str(exc)) from exc
    return total, synthesized


def sprs_power_co(
    pump: PumpChannel, quantum: QuantumChannel, fiber: FiberSpec, step_ghz: float = DEFAULT_STEP_GHZ
) -> float:
    """In-band SpRS power (W) at the far end from a co-propagating pump."""
    return _channel_sprs(pump, quantum, fiber, "co", step_ghz)[0]


def sprs_power_counter(
    pump: PumpChannel, quantum: QuantumChannel, fiber: FiberSpec, step_ghz: float = DEFAULT_STEP_GHZ
) -> float:
    """In-band SpRS power (W) backscattered toward the pump's launch end."""
    return _channel_sprs(pump, quantum, fiber, "counter", step_ghz)[0]


@dataclass(frozen=True)
class SprsTotal:
    co_w: float
    counter_w: float
    synthesized: bool
    per_channel: tuple[tuple[str, str, float], ...] = ()


def sprs_total(
    plan: Sequence[PumpChannel], quantum: QuantumChannel, fiber: FiberSpec, step_ghz: float = DEFAULT_STEP_GHZ
) -> SprsTotal:
    """Sum of SpRS contributions from every classical channel, split by direction."""
    co = counter = 0.0
    synthesized = False
    rows = []
    for ch in plan:
        p, synth = _channel_sprs(ch, quantum, fiber, ch.direction, step_ghz)
        synthesized |= synth
        if ch.direction == "co":
            co += p
        else:
            counter += p
        rows.append((ch.label, ch.direction, p))
    return SprsTotal(co, counter, synthesized, tuple(rows))
