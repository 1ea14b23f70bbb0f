"""Brute-force quadrature references for the closed-form noise models.

Everything here integrates the propagation integrands directly (composite
trapezoid with Richardson extrapolation) and shares no code with the closed
forms beyond profile lookups.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import PumpChannel, QuantumChannel
from .fwm import FwmProduct
from .profiles import FiberSpec
from .sprs import DEFAULT_STEP_GHZ, raman_efficiency
from .units import Frequency

_CHUNK = 1 << 20


class OracleConvergenceError(RuntimeError):
    def __init__(self, message: str, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class QuadratureConfig:
    tolerance: float = 1e-10
    max_doublings: int = 24
    min_doublings: int = 4

    def __post_init__(self):
        if not 0 < self.tolerance < 1:
            raise ValueError("tolerance must lie in (0, 1)")
        if self.max_doublings < 1:
            raise ValueError("need at least one doubling (step count >= 2)")
        if self.min_doublings < 1:
            raise ValueError("min_doublings must be >= 1")


def _midpoint_sum(f, a: float, h: float, n_new: int):
    total = 0.0
    for start in range(0, n_new, _CHUNK):
        m = np.arange(start, min(start + _CHUNK, n_new))
        total = total + np.sum(f(a + (2 * m + 1) * h))
    return total


def trapezoid(f: Callable, a: float, b: float, n: int):
    """Composite trapezoid rule with ``n`` intervals; ``f`` must be vectorized."""
    if n < 1:
        raise ValueError("need at least one interval")
    z = np.linspace(a, b, n + 1)
    y = f(z)
    h = (b - a) / n
    return h * (np.sum(y) - 0.5 * (y[0] + y[-1]))


def romberg(f: Callable, a: float, b: float, cfg: QuadratureConfig | None = None):
    """Integrate ``f`` over [a, b] by trapezoid halving plus Richardson extrapolation.

    Converged once two consecutive diagonal estimates agree to
    ``cfg.tolerance`` (relative) after at least ``cfg.min_doublings`` halvings.
    Works for complex integrands.
    """
    cfg = cfg or QuadratureConfig()
    h = b - a
    ends = f(np.array([a, b]))
    prev_row = [0.5 * h * (ends[0] + ends[1])]
    n = 1
    hits = 0
    for level in range(1, cfg.max_doublings + 1):
        h /= 2.0
        trap = 0.5 * prev_row[0] + h * _midpoint_sum(f, a, h, n)
        n *= 2
        row = [trap]
        for j in range(1, level + 1):
            row.append(row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (4.0**j - 1.0))
        best, last = row[-1], prev_row[-1]
        scale = abs(best)
        if abs(best - last) <= cfg.tolerance * scale or (scale == 0 and best == last):
            hits += 1
        else:
            hits = 0
        if level >= cfg.min_doublings and hits >= 2:
            return complex(best) if np.iscomplexobj(best) else float(best)
        prev_row = row
    raise OracleConvergenceError(
        f"quadrature did not reach relative tolerance {cfg.tolerance:g} within {cfg.max_doublings} doublings",
        estimate=prev_row[-1],
    )


def convergence_order(f: Callable, a: float, b: float, n: int = 16) -> float:
    """Observed order of the plain trapezoid rule from three successive halvings."""
    t1, t2, t3 = (trapezoid(f, a, b, n * 2**m) for m in range(3))
    return math.log2(abs(t1 - t2) / abs(t2 - t3))


CumulativeLoss = Callable[[np.ndarray, Frequency], np.ndarray]


def uniform_loss(fiber: FiberSpec) -> CumulativeLoss:
    """Cumulative loss (nepers) from 0 to z for a z-independent fiber."""

    def loss(z, f: Frequency):
        return fiber.alpha(f) * np.asarray(z, dtype=float)

    return loss


def integrate_sprs(
    pump: PumpChannel,
    quantum: QuantumChannel,
    fiber: FiberSpec,
    direction: str,
    cfg: QuadratureConfig | None = None,
    cumulative_loss: CumulativeLoss | None = None,
    step_ghz: float = DEFAULT_STEP_GHZ,
) -> float:
    """SpRS power (W) by direct integration over z.

    ``cumulative_loss(z, f)`` returns the integrated attenuation in nepers
    between 0 and z at frequency f, so z-varying fibers are supported.
    """
    if direction not in ("co", "counter"):
        raise ValueError(f"direction must be 'co' or 'counter', got {direction!r}")
    loss = cumulative_loss or uniform_loss(fiber)
    L = fiber.length_km
    fq = quantum.frequency
    loss_q_end = float(loss(np.array([L]), fq)[0])
    total = 0.0
    for f, p in pump.slices(step_ghz):
        rho, _ = raman_efficiency(fiber, f, fq)
        if direction == "co":
            def integrand(z, f=f):
                return np.exp(-loss(z, f) - (loss_q_end - loss(z, fq)))
        else:
            def integrand(z, f=f):
                return np.exp(-loss(z, f) - loss(z, fq))
        total += p * rho * quantum.bandwidth_ghz * float(romberg(integrand, 0.0, L, cfg))
    return total


def integrate_fwm_field(
    product: FwmProduct,
    plan: Sequence[PumpChannel],
    fiber: FiberSpec,
    cfg: QuadratureConfig | None = None,
    quantum: QuantumChannel | None = None,
    per_wave_alpha: bool = False,
) -> float:
    """FWM product power (W) from quadrature of the undepleted-pump field integral.

    With ``per_wave_alpha`` each pump and the product take their own
    attenuation; otherwise all use the one at ``quantum`` (or at the product
    frequency).
    """
    chans = [plan[product.i], plan[product.j], plan[product.k]]
    powers = [ch.power.watts for ch in chans]
    f_ref = quantum.frequency if quantum is not None else product.frequency
    if per_wave_alpha:
        a_i, a_j, a_k = (fiber.alpha(ch.frequency) for ch in chans)
        a_f = fiber.alpha(product.frequency)
    else:
        a_i = a_j = a_k = a_f = fiber.alpha(f_ref)
    a_mix = 0.5 * (a_i + a_j + a_k - a_f)
    dbeta = product.phase_mismatch
    L = fiber.length_km

    def integrand(z):
        return np.exp((1j * dbeta - a_mix) * z)

    field = romberg(integrand, 0.0, L, cfg)
    coupling = (product.degeneracy * fiber.gamma_per_w_km / 3.0) ** 2
    return coupling * powers[0] * powers[1] * powers[2] * math.exp(-a_f * L) * abs(field) ** 2


def integrate_rayleigh(psd_w_per_hz: float, fiber: FiberSpec, quantum: QuantumChannel,
                       cfg: QuadratureConfig | None = None) -> float:
    """Rayleigh-backscattered PSD (W/Hz) by quadrature of the round-trip loss."""
    alpha = fiber.alpha(quantum.frequency)
    integral = romberg(lambda z: np.exp(-2.0 * alpha * z), 0.0, fiber.length_km, cfg)
    return psd_w_per_hz * fiber.rayleigh_per_km * float(integral)


def oscillation_period(lengths, values) -> float:
    """Mean spacing (km) of the local maxima of a sampled series.

    Peak positions are refined with a three-point parabola. Raises
    ``ValueError`` when fewer than two maxima are present.
    """
    x = np.asarray(lengths, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.size < 3:
        raise ValueError("need matching series of at least three samples")
    if not np.all(np.diff(x) > 0):
        raise ValueError("lengths must be strictly increasing")
    idx = np.nonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    if idx.size < 2:
        raise ValueError(f"found {idx.size} local maxima; need at least two to measure a period")
    peaks = []
    for i in idx:
        x0, x1, x2 = x[i - 1 : i + 2]
        y0, y1, y2 = y[i - 1 : i + 2]
        denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
        a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
        b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
        peaks.append(-b / (2 * a) if a < 0 else x1)
    return float(np.mean(np.diff(peaks)))
