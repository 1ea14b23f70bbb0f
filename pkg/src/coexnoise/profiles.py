"""Measured fiber profiles: attenuation and spontaneous Raman efficiency.

Both profiles are tables interpolated linearly in linear units and are never
extrapolated; a query outside the sampled range raises
:class:`ProfileRangeError`.

Raman shift convention: ``shift = f_quantum - f_pump``. A negative shift is
the Stokes side (quantum channel below the pump in frequency).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .units import Frequency, Wavelength, db_per_km_to_nepers, db_to_linear, nm_per_hz

# snapping tolerance when a query lands on a tabulated pump wavelength
_PUMP_SNAP_NM = 1e-6

EFFICIENCY_UNITS = ("per_km_ghz", "db_per_km_ghz", "per_km_nm", "db_per_km_nm")


class ProfileRangeError(ValueError):
    """Query outside the sampled domain of a profile."""


class ProfileFormatError(ValueError):
    """Malformed profile table or file."""


def _read_csv_rows(path: str | Path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ProfileFormatError(f"{path}: no header row") from None
    rows = [[c.strip() for c in row] for row in reader if row]
    return header, rows


def _column(header: list[str], name: str, path) -> int:
    try:
        return header.index(name)
    except ValueError:
        raise ProfileFormatError(f"{path}: missing column '{name}' (header: {','.join(header)})") from None


@dataclass(frozen=True, eq=False)
class AttenuationProfile:
    """Attenuation in dB/km sampled on an increasing wavelength grid."""

    wavelength_nm: np.ndarray
    db_per_km: np.ndarray
    name: str = "attenuation profile"

    def __post_init__(self):
        wl = np.asarray(self.wavelength_nm, dtype=float).copy()
        att = np.asarray(self.db_per_km, dtype=float).copy()
        if wl.ndim != 1 or wl.shape != att.shape or wl.size < 2:
            raise ProfileFormatError(f"{self.name}: need at least two (wavelength, attenuation) samples")
        if not np.all(np.diff(wl) > 0):
            raise ProfileFormatError(f"{self.name}: wavelengths must be strictly increasing")
        if not np.all(att > 0) or not np.all(np.isfinite(att)):
            raise ProfileFormatError(f"{self.name}: attenuation must be > 0 dB/km at every sample")
        wl.setflags(write=False)
        att.setflags(write=False)
        object.__setattr__(self, "wavelength_nm", wl)
        object.__setattr__(self, "db_per_km", att)

    @classmethod
    def constant(cls, db_per_km: float, lo_nm: float, hi_nm: float) -> AttenuationProfile:
        return cls(np.array([lo_nm, hi_nm]), np.array([db_per_km, db_per_km]), name="constant attenuation")

    @classmethod
    def from_csv(cls, path: str | Path) -> AttenuationProfile:
        header, rows = _read_csv_rows(path)
        iw = _column(header, "wavelength_nm", path)
        ia = _column(header, "attenuation_db_per_km", path)
        try:
            data = sorted((float(r[iw]), float(r[ia])) for r in rows)
        except (ValueError, IndexError) as exc:
            raise ProfileFormatError(f"{path}: {exc}") from exc
        wl, att = zip(*data) if data else ((), ())
        return cls(np.array(wl), np.array(att), name=f"attenuation profile {Path(path).name}")

    @property
    def range_nm(self) -> tuple[float, float]:
        return float(self.wavelength_nm[0]), float(self.wavelength_nm[-1])

    def covers(self, wavelength: Wavelength) -> bool:
        lo, hi = self.range_nm
        return lo <= wavelength.nm <= hi

    def db_per_km_at(self, wavelength: Wavelength) -> float:
        lo, hi = self.range_nm
        if not lo <= wavelength.nm <= hi:
            raise ProfileRangeError(
                f"{self.name} covers {lo:g}-{hi:g} nm; query at {wavelength.nm:.4f} nm is outside"
            )
        return float(np.interp(wavelength.nm, self.wavelength_nm, self.db_per_km))

    def nepers_per_km_at(self, wavelength: Wavelength) -> float:
        return db_per_km_to_nepers(self.db_per_km_at(wavelength))

    lookup = db_per_km_at

    def to_rows(self) -> list[list[float]]:
        return [[float(w), float(a)] for w, a in zip(self.wavelength_nm, self.db_per_km)]


def efficiency_to_linear(value: float, unit: str, pump_nm: float, shift_ghz: float) -> float:
    """Convert one tabulated Raman efficiency to km^-1 GHz^-1."""
    if unit not in EFFICIENCY_UNITS:
        raise ProfileFormatError(f"unknown efficiency unit '{unit}', expected one of {EFFICIENCY_UNITS}")
    v = db_to_linear(value) if unit.startswith("db_") else float(value)
    if unit.endswith("_nm"):
        # per-nm density at the scattered wavelength -> per-GHz density
        scattered = Wavelength(pump_nm).to_frequency().shifted(shift_ghz).to_wavelength()
        v *= nm_per_hz(scattered) * 1e9
    return v


@dataclass(frozen=True, eq=False)
class SprsEfficiencyProfile:
    """Raman efficiency in km^-1 GHz^-1, one curve per tabulated pump wavelength.

    Between tabulated pumps the two neighbouring curves are interpolated in
    shift and then blended linearly in pump wavelength.
    """

    pump_nm: tuple[float, ...]
    curves: tuple[tuple[np.ndarray, np.ndarray], ...]
    name: str = "SpRS efficiency profile"
    _sides: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if len(self.pump_nm) == 0 or len(self.pump_nm) != len(self.curves):
            raise ProfileFormatError(f"{self.name}: need one curve per pump wavelength")
        if any(b <= a for a, b in zip(self.pump_nm, self.pump_nm[1:])):
            raise ProfileFormatError(f"{self.name}: pump wavelengths must be strictly increasing")
        curves = []
        for p, (shift, eff) in zip(self.pump_nm, self.curves):
            shift = np.asarray(shift, dtype=float).copy()
            eff = np.asarray(eff, dtype=float).copy()
            if shift.ndim != 1 or shift.shape != eff.shape or shift.size < 2:
                raise ProfileFormatError(f"{self.name}: pump {p:g} nm needs at least two shift samples")
            if not np.all(np.diff(shift) > 0):
                raise ProfileFormatError(f"{self.name}: shifts for pump {p:g} nm must be strictly increasing")
            if not np.all(eff >= 0) or not np.all(np.isfinite(eff)):
                raise ProfileFormatError(f"{self.name}: efficiencies must be finite and >= 0")
            anti = shift > 0
            mirrored = -shift[anti]
            inside = (mirrored >= shift[0]) & (mirrored <= shift[-1])
            if np.any(eff[anti][inside] > np.interp(mirrored[inside], shift, eff) * (1 + 1e-9)):
                raise ProfileFormatError(
                    f"{self.name}: pump {p:g} nm has anti-Stokes efficiency above the Stokes value at equal |shift|"
                )
            shift.setflags(write=False)
            eff.setflags(write=False)
            curves.append((shift, eff))
        object.__setattr__(self, "pump_nm", tuple(float(p) for p in self.pump_nm))
        object.__setattr__(self, "curves", tuple(curves))
        all_shifts = np.concatenate([s for s, _ in curves])
        self._sides["stokes"] = bool(np.any(all_shifts < 0))
        self._sides["anti-stokes"] = bool(np.any(all_shifts > 0))

    @classmethod
    def from_samples(
        cls, rows: Iterable[Sequence[float]], unit: str = "per_km_ghz", name: str = "SpRS efficiency profile"
    ) -> SprsEfficiencyProfile:
        """Build from ``(pump_nm, shift_ghz, efficiency)`` rows in the declared unit."""
        by_pump: dict[float, list[tuple[float, float]]] = {}
        for pump, shift, value in rows:
            by_pump.setdefault(float(pump), []).append(
                (float(shift), efficiency_to_linear(float(value), unit, float(pump), float(shift)))
            )
        pumps = sorted(by_pump)
        curves = []
        for p in pumps:
            pts = sorted(by_pump[p])
            shifts = [s for s, _ in pts]
            if len(set(shifts)) != len(shifts):
                raise ProfileFormatError(f"{name}: duplicate shift for pump {p:g} nm")
            curves.append((np.array(shifts), np.array([v for _, v in pts])))
        return cls(tuple(pumps), tuple(curves), name=name)

    @classmethod
    def from_csv(cls, path: str | Path) -> SprsEfficiencyProfile:
        header, rows = _read_csv_rows(path)
        ip = _column(header, "pump_wavelength_nm", path)
        isft = _column(header, "shift_ghz", path)
        unit_cols = [u for u in EFFICIENCY_UNITS if f"efficiency_{u}" in header]
        if len(unit_cols) != 1:
            raise ProfileFormatError(
                f"{path}: expected exactly one efficiency column among "
                + ", ".join(f"efficiency_{u}" for u in EFFICIENCY_UNITS)
            )
        unit = unit_cols[0]
        ie = header.index(f"efficiency_{unit}")
        try:
            samples = [(float(r[ip]), float(r[isft]), float(r[ie])) for r in rows]
        except (ValueError, IndexError) as exc:
            raise ProfileFormatError(f"{path}: {exc}") from exc
        return cls.from_samples(samples, unit=unit, name=f"SpRS efficiency profile {Path(path).name}")

    @classmethod
    def zeros(cls, pump_range_nm: tuple[float, float], shift_range_ghz: tuple[float, float]) -> SprsEfficiencyProfile:
        """Identically zero efficiency over the given domain (SpRS switched off)."""
        shifts = np.array(shift_range_ghz, dtype=float)
        pumps = tuple(sorted(set(pump_range_nm)))
        return cls(pumps, tuple((shifts, np.zeros(2)) for _ in pumps), name="zero SpRS efficiency")

    def has_side(self, side: str) -> bool:
        """``side`` is ``"stokes"`` or ``"anti-stokes"``."""
        return self._sides[side]

    @property
    def pump_range_nm(self) -> tuple[float, float]:
        return self.pump_nm[0], self.pump_nm[-1]

    def _curve_value(self, idx: int, shift_ghz: float) -> float:
        shift, eff = self.curves[idx]
        if not shift[0] <= shift_ghz <= shift[-1]:
            raise ProfileRangeError(
                f"{self.name}: pump {self.pump_nm[idx]:g} nm covers shifts "
                f"{shift[0]:g} to {shift[-1]:g} GHz; query at {shift_ghz:.3f} GHz is outside"
            )
        return float(np.interp(shift_ghz, shift, eff))

    def lookup(self, pump: Wavelength, shift_ghz: float) -> float:
        p = pump.nm
        lo, hi = self.pump_range_nm
        if not (lo - _PUMP_SNAP_NM <= p <= hi + _PUMP_SNAP_NM):
            raise ProfileRangeError(f"{self.name} covers pumps {lo:g}-{hi:g} nm; pump at {p:.4f} nm is outside")
        pumps = np.asarray(self.pump_nm)
        nearest = int(np.argmin(np.abs(pumps - p)))
        if abs(pumps[nearest] - p) <= _PUMP_SNAP_NM:
            return self._curve_value(nearest, shift_ghz)
        k = int(np.searchsorted(pumps, p))
        w = (p - pumps[k - 1]) / (pumps[k] - pumps[k - 1])
        return (1.0 - w) * self._curve_value(k - 1, shift_ghz) + w * self._curve_value(k, shift_ghz)

    def to_rows(self) -> list[list[float]]:
        return [
            [p, float(s), float(v)]
            for p, (shift, eff) in zip(self.pump_nm, self.curves)
            for s, v in zip(shift, eff)
        ]


def profile_lookup(profile: AttenuationProfile | SprsEfficiencyProfile, *query) -> float:
    """Interpolated value of either profile type.

    ``profile_lookup(att, wavelength)`` returns dB/km;
    ``profile_lookup(sprs, pump_wavelength, shift_ghz)`` returns km^-1 GHz^-1.
    """
    return profile.lookup(*query)


@dataclass(frozen=True)
class FiberSpec:
    length_km: float
    attenuation: AttenuationProfile
    sprs: SprsEfficiencyProfile
    rayleigh_db_per_km: float = -42.32
    beta2_ps2_per_km: float = -21.1
    gamma_per_w_km: float = 1.3
    temperature_k: float = 295.0

    def __post_init__(self):
        if not (self.length_km > 0 and math.isfinite(self.length_km)):
            raise ValueError(f"fiber length must be > 0 km, got {self.length_km!r}")
        if not self.temperature_k > 0:
            raise ValueError(f"temperature must be > 0 K, got {self.temperature_k!r}")
        if not self.gamma_per_w_km >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma_per_w_km!r}")
        if not math.isfinite(self.beta2_ps2_per_km):
            raise ValueError("beta2 must be finite")

    def alpha(self, frequency: Frequency) -> float:
        """Attenuation in 1/km (nepers) at ``frequency``."""
        return self.attenuation.nepers_per_km_at(frequency.to_wavelength())

    @property
    def rayleigh_per_km(self) -> float:
        return db_to_linear(self.rayleigh_db_per_km)

    def with_length(self, length_km: float) -> FiberSpec:
        return FiberSpec(
            length_km,
            self.attenuation,
            self.sprs,
            self.rayleigh_db_per_km,
            self.beta2_ps2_per_km,
            self.gamma_per_w_km,
            self.temperature_k,
        )
