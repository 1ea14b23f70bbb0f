"""Scenarios, noise budgets and parameter sweeps."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .channels import PumpChannel, QuantumChannel
from .fwm import enumerate_products, fwm_power
from .leakage import LeakageSource, copropagated_leakage, rayleigh_backscatter
from .profiles import FiberSpec, ProfileRangeError
from .sprs import DEFAULT_STEP_GHZ, raman_efficiency, sprs_total
from .units import Frequency, PowerDensity, photon_energy

MECHANISMS = ("sprs_co", "sprs_counter", "rayleigh_ase", "co_leakage", "fwm", "background")
FWM_MODES = ("exact", "averaged", "both")
AXES = {"length": "km", "quantum-frequency": "THz", "classical-power": "dB"}


class ScenarioError(ValueError):
    """Scenario failed validation; ``problems`` lists every offending field."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class SweepError(ValueError):
    def __init__(self, failures: Sequence[tuple[float, str]]):
        self.failures = list(failures)
        super().__init__("; ".join(f"at {v:g}: {msg}" for v, msg in self.failures))


@dataclass(frozen=True)
class Sweep:
    axis: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"sweep axis must be one of {tuple(AXES)}, got {self.axis!r}")
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("sweep needs at least one point")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.axis != "classical-power" and vals[0] <= 0:
            raise ValueError(f"{self.axis} sweep values must be positive")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_range(cls, axis: str, start: float, stop: float, step: float) -> Sweep:
        if not step > 0:
            raise ValueError("sweep step must be > 0")
        if stop < start:
            raise ValueError("sweep stop must not precede start")
        n = int(math.floor((stop - start) / step + 1e-9))
        # computed from the index, not by accumulation, so values are reproducible
        return cls(axis, tuple(round(start + m * step, 12) for m in range(n + 1)))

    @property
    def unit(self) -> str:
        return AXES[self.axis]


@dataclass(frozen=True)
class Scenario:
    fiber: FiberSpec
    plan: tuple[PumpChannel, ...]
    quantum: QuantumChannel
    leakage: tuple[LeakageSource, ...] = ()
    background: PowerDensity = PowerDensity(0.0)
    fwm_mode: str = "exact"
    ase_step_ghz: float = DEFAULT_STEP_GHZ
    sweep: Sweep | None = None
    name: str = ""

    def __post_init__(self):
        if self.fwm_mode not in FWM_MODES:
            raise ValueError(f"fwm mode must be one of {FWM_MODES}, got {self.fwm_mode!r}")
        if not self.ase_step_ghz > 0:
            raise ValueError("ASE discretization step must be > 0 GHz")
        object.__setattr__(self, "plan", tuple(self.plan))
        object.__setattr__(self, "leakage", tuple(self.leakage))

    def at(self, axis: str, value: float) -> Scenario:
        """Copy of the scenario with one sweep axis set to ``value`` (sweep removed)."""
        if axis == "length":
            return replace(self, fiber=self.fiber.with_length(value), sweep=None)
        if axis == "quantum-frequency":
            return replace(self, quantum=self.quantum.with_frequency(Frequency(value)), sweep=None)
        if axis == "classical-power":
            factor = 10.0 ** (value / 10.0)
            return replace(self, plan=tuple(ch.scaled(factor) for ch in self.plan), sweep=None)
        raise ValueError(f"unknown sweep axis {axis!r}")

    def flipped(self) -> Scenario:
        """All classical channels and leakage sources with reversed direction."""
        flip = {"co": "counter", "counter": "co"}
        return replace(
            self,
            plan=tuple(ch.with_direction(flip[ch.direction]) for ch in self.plan),
            leakage=tuple(LeakageSource(s.psd, flip[s.direction], s.name) for s in self.leakage),
        )


@dataclass(frozen=True)
class BudgetEntry:
    psd_w_per_hz: float
    power_w: float
    photons_per_s: float

    def scaled(self, factor: float) -> BudgetEntry:
        return BudgetEntry(self.psd_w_per_hz * factor, self.power_w * factor, self.photons_per_s * factor)


def psd_to_photon_rate(psd: PowerDensity, frequency: Frequency, bandwidth_ghz: float) -> float:
    """Photon arrivals per second in a rectangular filter of ``bandwidth_ghz``."""
    if not bandwidth_ghz > 0:
        raise ValueError(f"bandwidth must be > 0 GHz, got {bandwidth_ghz!r}")
    return psd.w_per_hz * bandwidth_ghz * 1e9 / photon_energy(frequency)


def _entry_from_psd(psd: float, quantum: QuantumChannel) -> BudgetEntry:
    return BudgetEntry(
        psd,
        psd * quantum.bandwidth_hz,
        psd_to_photon_rate(PowerDensity(psd), quantum.frequency, quantum.bandwidth_ghz),
    )


def _entry_from_power(power: float, quantum: QuantumChannel) -> BudgetEntry:
    return _entry_from_psd(power / quantum.bandwidth_hz, quantum)


ZERO_ENTRY = BudgetEntry(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class NoiseBudget:
    """Noise at the quantum receiver, one entry per active mechanism.

    ``alternates`` holds estimates that are reported but not summed (the
    averaged FWM value when both efficiency modes are requested).
    """

    quantum: QuantumChannel
    entries: dict[str, BudgetEntry]
    alternates: dict[str, BudgetEntry] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def entry(self, mechanism: str) -> BudgetEntry:
        if mechanism not in MECHANISMS:
            raise KeyError(mechanism)
        return self.entries.get(mechanism, ZERO_ENTRY)

    @property
    def total(self) -> BudgetEntry:
        vals = list(self.entries.values())
        return BudgetEntry(
            math.fsum(e.psd_w_per_hz for e in vals),
            math.fsum(e.power_w for e in vals),
            math.fsum(e.photons_per_s for e in vals),
        )

    def scaled(self, factor: float) -> NoiseBudget:
        return NoiseBudget(
            self.quantum,
            {k: e.scaled(factor) for k, e in self.entries.items()},
            {k: e.scaled(factor) for k, e in self.alternates.items()},
            dict(self.metadata),
        )


def model_uncertainty_band(budget: NoiseBudget, half_width_db: float = 1.0) -> tuple[NoiseBudget, NoiseBudget]:
    """``(low, high)`` budgets scaled by -/+ ``half_width_db``."""
    if not half_width_db >= 0:
        raise ValueError("half width must be >= 0 dB")
    factor = 10.0 ** (half_width_db / 10.0)
    return budget.scaled(1.0 / factor), budget.scaled(factor)


def validate_scenario(s: Scenario) -> list[str]:
    """Every coverage or geometry problem in ``s``; empty when runnable."""
    problems = []
    fiber, q = s.fiber, s.quantum
    try:
        fiber.alpha(q.frequency)
    except ProfileRangeError as exc:
        problems.append(f"quantum.frequency: {exc}")
    half = 0.5 * q.bandwidth_ghz * 1e-3
    for n, ch in enumerate(s.plan):
        where = f"channels[{n}] ({ch.label})"
        lo, hi = ch.band_thz
        if lo - half <= q.frequency.thz <= hi + half:
            problems.append(f"{where}: overlaps the quantum channel at {q.frequency.thz:.4f} THz")
            continue
        for f, _ in ch.slices(s.ase_step_ghz):
            try:
                fiber.alpha(f)
                raman_efficiency(fiber, f, q.frequency)
            except ProfileRangeError as exc:
                problems.append(f"{where}: {exc}")
                break
    return problems


def _problems_for(s: Scenario) -> list[str]:
    if s.sweep is None:
        return validate_scenario(s)
    problems = []
    for v in s.sweep.values:
        problems += [f"sweep {s.sweep.axis}={v:g}: {p}" for p in validate_scenario(s.at(s.sweep.axis, v))]
    return problems


def check_scenario(s: Scenario) -> None:
    """Raise :class:`ScenarioError` if any point of ``s`` (or its sweep) is invalid."""
    problems = _problems_for(s)
    if problems:
        raise ScenarioError(problems)


def run_budget(s: Scenario) -> NoiseBudget:
    """Noise budget at the scenario's base point (any sweep is ignored)."""
    problems = validate_scenario(s)
    if problems:
        raise ScenarioError(problems)
    fiber, q = s.fiber, s.quantum
    entries: dict[str, BudgetEntry] = {}
    alternates: dict[str, BudgetEntry] = {}
    meta: dict = {"synthesized_antistokes": False, "fwm_products": [], "warnings": []}

    co = [ch for ch in s.plan if ch.direction == "co"]
    counter = [ch for ch in s.plan if ch.direction == "counter"]
    if s.plan:
        sprs = sprs_total(s.plan, q, fiber, s.ase_step_ghz)
        meta["synthesized_antistokes"] = sprs.synthesized
        if co:
            entries["sprs_co"] = _entry_from_power(sprs.co_w, q)
        if counter:
            entries["sprs_counter"] = _entry_from_power(sprs.counter_w, q)

    leak_counter = [src for src in s.leakage if src.direction == "counter"]
    leak_co = [src for src in s.leakage if src.direction == "co"]
    if leak_counter:
        psd = math.fsum(rayleigh_backscatter(src, fiber, q) for src in leak_counter)
        entries["rayleigh_ase"] = _entry_from_psd(psd, q)
    if leak_co:
        psd = math.fsum(copropagated_leakage(src, fiber, q) for src in leak_co)
        entries["co_leakage"] = _entry_from_psd(psd, q)

    if any(ch.is_cw for ch in co):
        products = enumerate_products(s.plan, q, fiber)
        exact = [fwm_power(p, s.plan, fiber, "exact", q) for p in products]
        averaged = [fwm_power(p, s.plan, fiber, "averaged", q) for p in products]
        for p, pe, pa in zip(products, exact, averaged):
            meta["fwm_products"].append(
                {
                    "i": p.i,
                    "j": p.j,
                    "k": p.k,
                    "degeneracy": p.degeneracy,
                    "frequency_thz": p.frequency.thz,
                    "phase_mismatch_rad_per_km": p.phase_mismatch,
                    "power_w_exact": pe,
                    "power_w_averaged": pa,
                }
            )
        if s.fwm_mode == "averaged":
            entries["fwm"] = _entry_from_power(math.fsum(averaged), q)
        else:
            entries["fwm"] = _entry_from_power(math.fsum(exact), q)
            if s.fwm_mode == "both":
                alternates["fwm_averaged"] = _entry_from_power(math.fsum(averaged), q)

    entries["background"] = _entry_from_psd(s.background.w_per_hz, q)
    ordered = {m: entries[m] for m in MECHANISMS if m in entries}
    return NoiseBudget(q, ordered, alternates, meta)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    budget: NoiseBudget


def run_sweep(s: Scenario, threads: int = 0) -> list[SweepPoint]:
    """One budget per sweep value, ordered by axis value.

    ``threads`` = 0 picks the executor default; 1 runs serially.
    """
    if s.sweep is None:
        raise ScenarioError(["sweep: scenario defines no sweep axis"])
    axis = s.sweep.axis

    def one(v):
        try:
            return SweepPoint(v, run_budget(s.at(axis, v))), None
        except (ScenarioError, ProfileRangeError) as exc:
            return None, (v, str(exc))

    if threads == 1:
        results = [one(v) for v in s.sweep.values]
    else:
        with ThreadPoolExecutor(max_workers=threads or None) as pool:
            results = list(pool.map(one, s.sweep.values))
    failures = [err for _, err in results if err is not None]
    if failures:
        raise SweepError(failures)
    return [pt for pt, _ in results]


def series(points: Sequence[SweepPoint], mechanism: str, quantity: str = "power_w") -> np.ndarray:
    """Extract one mechanism's values along a sweep (alternates included)."""
    out = []
    for pt in points:
        b = pt.budget
        e = b.alternates[mechanism] if mechanism in b.alternates else b.entry(mechanism)
        out.append(getattr(e, quantity))
    return np.array(out)
