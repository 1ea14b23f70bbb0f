"""Spectral quantities with explicit units and the conversions between them.

Frequencies are stored in THz and wavelengths in nm (vacuum). Powers are
stored in W, spectral densities in W/Hz. Logarithmic forms (dBm, dBm/GHz)
are accessors only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants

SPEED_OF_LIGHT = constants.c  # m/s
PLANCK = constants.h  # J s
BOLTZMANN = constants.k  # J/K

# c expressed in nm*THz, so f[THz] = C_NM_THZ / lambda[nm]
C_NM_THZ = SPEED_OF_LIGHT * 1e-3


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Frequency:
    thz: float

    def __post_init__(self):
        object.__setattr__(self, "thz", _require_positive("frequency", self.thz))

    @property
    def hz(self) -> float:
        return self.thz * 1e12

    @property
    def ghz(self) -> float:
        return self.thz * 1e3

    def to_wavelength(self) -> Wavelength:
        return Wavelength(C_NM_THZ / self.thz)

    def shifted(self, ghz: float) -> Frequency:
        return Frequency(self.thz + ghz * 1e-3)


@dataclass(frozen=True)
class Wavelength:
    nm: float

    def __post_init__(self):
        object.__setattr__(self, "nm", _require_positive("wavelength", self.nm))

    @property
    def m(self) -> float:
        return self.nm * 1e-9

    def to_frequency(self) -> Frequency:
        return Frequency(C_NM_THZ / self.nm)


def wavelength_to_frequency(wavelength: Wavelength) -> Frequency:
    return wavelength.to_frequency()


def frequency_to_wavelength(frequency: Frequency) -> Wavelength:
    return frequency.to_wavelength()


def dbm_to_watts(dbm: float) -> float:
    return 1e-3 * 10.0 ** (dbm / 10.0)


def watts_to_dbm(watts: float) -> float:
    if not watts > 0:
        raise ValueError(f"cannot express {watts!r} W in dBm")
    return 10.0 * math.log10(watts / 1e-3)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(value: float) -> float:
    if not value > 0:
        raise ValueError(f"cannot express {value!r} in dB")
    return 10.0 * math.log10(value)


def db_per_km_to_nepers(db_per_km: float) -> float:
    """Convert a power attenuation in dB/km to the exponent rate in 1/km."""
    return db_per_km * math.log(10.0) / 10.0


def nepers_to_db_per_km(nepers_per_km: float) -> float:
    return nepers_per_km * 10.0 / math.log(10.0)


def nm_per_hz(wavelength: Wavelength) -> float:
    """Spectral width in nm of 1 Hz at ``wavelength`` (lambda^2 / c)."""
    return wavelength.m**2 / SPEED_OF_LIGHT * 1e9


def psd_per_nm_to_per_hz(w_per_nm: float, wavelength: Wavelength) -> float:
    return w_per_nm * nm_per_hz(wavelength)


def psd_per_hz_to_per_nm(w_per_hz: float, wavelength: Wavelength) -> float:
    return w_per_hz / nm_per_hz(wavelength)


@dataclass(frozen=True)
class Power:
    watts: float

    def __post_init__(self):
        w = float(self.watts)
        if not (w >= 0 and math.isfinite(w)):
            raise ValueError(f"power must be non-negative, got {w!r} W")
        object.__setattr__(self, "watts", w)

    @classmethod
    def from_dbm(cls, dbm: float) -> Power:
        return cls(dbm_to_watts(dbm))

    @property
    def dbm(self) -> float:
        return watts_to_dbm(self.watts)

    @property
    def mw(self) -> float:
        return self.watts * 1e3

    def scaled(self, factor: float) -> Power:
        return Power(self.watts * factor)


@dataclass(frozen=True)
class PowerDensity:
    w_per_hz: float

    def __post_init__(self):
        s = float(self.w_per_hz)
        if not (s >= 0 and math.isfinite(s)):
            raise ValueError(f"power density must be non-negative, got {s!r} W/Hz")
        object.__setattr__(self, "w_per_hz", s)

    @classmethod
    def from_dbm_per_ghz(cls, value: float) -> PowerDensity:
        return cls(dbm_to_watts(value) / 1e9)

    @classmethod
    def from_w_per_nm(cls, value: float, wavelength: Wavelength) -> PowerDensity:
        return cls(psd_per_nm_to_per_hz(value, wavelength))

    @property
    def dbm_per_ghz(self) -> float:
        return watts_to_dbm(self.w_per_hz * 1e9)

    def w_per_nm(self, wavelength: Wavelength) -> float:
        return psd_per_hz_to_per_nm(self.w_per_hz, wavelength)

    def dbm_per_nm(self, wavelength: Wavelength) -> float:
        return watts_to_dbm(self.w_per_nm(wavelength))

    def scaled(self, factor: float) -> PowerDensity:
        return PowerDensity(self.w_per_hz * factor)


def photon_energy(frequency: Frequency) -> float:
    return PLANCK * frequency.hz
