"""Four-wave mixing products falling inside the quantum filter.

Pumps are undepleted, only beta2 enters the phase mismatch, and products are
added in power (independent tone phases). A single attenuation, taken at the
quantum channel, is used for every wave of a product.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channels import PumpChannel, QuantumChannel
from .profiles import FiberSpec
from .units import Frequency

MODES = ("exact", "averaged")


@dataclass(frozen=True)
class FwmProduct:
    """Mixing term f_i + f_j - f_k with i <= j and k not in {i, j}."""

    i: int
    j: int
    k: int
    degeneracy: int
    frequency: Frequency
    phase_mismatch: float  # rad/km

    @property
    def is_degenerate(self) -> bool:
        return self.i == self.j


def phase_mismatch(f_i: Frequency, f_j: Frequency, f_k: Frequency, beta2_ps2_per_km: float) -> float:
    """Linear phase mismatch in rad/km.

    beta2 in ps^2/km times (2 pi THz)^2 lands directly in rad/km.
    """
    return beta2_ps2_per_km * (2 * math.pi) ** 2 * (f_i.thz - f_k.thz) * (f_j.thz - f_k.thz)


def enumerate_products(
    plan: Sequence[PumpChannel], quantum: QuantumChannel, fiber: FiberSpec
) -> list[FwmProduct]:
    """Every FWM triple of co-propagating CW tones landing in the quantum filter.

    Indices refer to positions in ``plan``; counter-propagating channels and
    shaped loading are skipped.
    """
    tones = [n for n, ch in enumerate(plan) if ch.is_cw and ch.direction == "co"]
    half_bw_thz = 0.5 * quantum.bandwidth_ghz * 1e-3
    f_q = quantum.frequency.thz
    products = []
    for a, i in enumerate(tones):
        for j in tones[a:]:
            for k in tones:
                if k == i or k == j:
                    continue
                f = plan[i].frequency.thz + plan[j].frequency.thz - plan[k].frequency.thz
                # 1e-12 THz absorbs rounding in the sum
                if abs(f - f_q) > half_bw_thz + 1e-12 or f <= 0:
                    continue
                dbeta = phase_mismatch(
                    plan[i].frequency, plan[j].frequency, plan[k].frequency, fiber.beta2_ps2_per_km
                )
                products.append(FwmProduct(i, j, k, 3 if i == j else 6, Frequency(f), dbeta))
    return products


def effective_length(alpha: float, length_km: float) -> float:
    if alpha * length_km < 1e-12:
        return length_km
    return -math.expm1(-alpha * length_km) / alpha


def _check(alpha: float, length_km: float):
    if not alpha > 0:
        raise ValueError(f"attenuation must be > 0 1/km, got {alpha!r}")
    if not length_km > 0:
        raise ValueError(f"length must be > 0 km, got {length_km!r}")


def fwm_efficiency_exact(delta_beta: float, alpha: float, length_km: float) -> float:
    """Mixing efficiency relative to the phase-matched case (alpha in 1/km)."""
    _check(alpha, length_km)
    decay = math.exp(-alpha * length_km)
    one_minus = -math.expm1(-alpha * length_km)
    ripple = 4.0 * decay * math.sin(0.5 * delta_beta * length_km) ** 2 / one_minus**2
    return alpha**2 / (alpha**2 + delta_beta**2) * (1.0 + ripple)


def fwm_efficiency_averaged(delta_beta: float, alpha: float, length_km: float) -> float:
    """Exact efficiency with the sin^2 ripple replaced by its mean of 1/2."""
    _check(alpha, length_km)
    decay = math.exp(-alpha * length_km)
    one_minus = -math.expm1(-alpha * length_km)
    return alpha**2 / (alpha**2 + delta_beta**2) * (1.0 + 2.0 * decay / one_minus**2)


def _efficiency(mode: str):
    if mode == "exact":
        return fwm_efficiency_exact
    if mode == "averaged":
        return fwm_efficiency_averaged
    raise ValueError(f"FWM efficiency mode must be one of {MODES}, got {mode!r}")


def fwm_power(
    product: FwmProduct,
    plan: Sequence[PumpChannel],
    fiber: FiberSpec,
    efficiency_mode: str = "exact",
    quantum: QuantumChannel | None = None,
) -> float:
    """Received power (W) of one mixing product at z = L.

    The attenuation is taken at ``quantum`` when given, else at the product
    frequency.
    """
    efficiency = _efficiency(efficiency_mode)
    powers = []
    for n in (product.i, product.j, product.k):
        ch = plan[n]
        if not ch.is_cw:
            raise ValueError(f"channel {ch.label} has no CW power for FWM")
        powers.append(ch.power.watts)
    if powers[0] == 0 or powers[1] == 0 or powers[2] == 0:
        return 0.0
    f_ref = quantum.frequency if quantum is not None else product.frequency
    alpha = fiber.alpha(f_ref)
    L = fiber.length_km
    leff = effective_length(alpha, L)
    coupling = (product.degeneracy * fiber.gamma_per_w_km / 3.0) ** 2
    return (
        coupling * powers[0] * powers[1] * powers[2] * math.exp(-alpha * L) * leff**2
        * efficiency(product.phase_mismatch, alpha, L)
    )


def fwm_total(
    products: Sequence[FwmProduct],
    plan: Sequence[PumpChannel],
    fiber: FiberSpec,
    efficiency_mode: str = "exact",
    quantum: QuantumChannel | None = None,
) -> float:
    return math.fsum(fwm_power(p, plan, fiber, efficiency_mode, quantum) for p in products)


class Subtracted(NamedTuple):
    values: np.ndarray
    clamped: np.ndarray  # bool mask of points forced to zero


def subtract_linear_contribution(total_measured, linear_model) -> Subtracted:
    """Pointwise ``total - linear`` in linear power units, clamped at zero."""
    total = np.asarray(total_measured, dtype=float)
    linear = np.asarray(linear_model, dtype=float)
    if total.shape != linear.shape:
        raise ValueError(f"series are misaligned: {total.shape} vs {linear.shape}")
    diff = total - linear
    clamped = diff < 0
    if clamped.any():
        warnings.warn(
            f"{int(clamped.sum())} point(s) fell below the linear contribution and were clamped to 0",
            RuntimeWarning,
            stacklevel=2,
        )
    return Subtracted(np.where(clamped, 0.0, diff), clamped)
