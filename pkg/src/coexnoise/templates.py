"""Named example scenarios reproducing the two measurement geometries.

The fiber constants (beta2, gamma, Rayleigh efficiency, tone spacing, quantum
frequency) are the published values. The attenuation curve, Raman efficiency
table, launch powers, leakage and background levels are synthetic
placeholders and must be replaced by measured data before the outputs are
compared with an experiment.
"""
from __future__ import annotations

import math

import numpy as np

from .units import BOLTZMANN, PLANCK

PLACEHOLDER_NOTE = (
    "Attenuation, Raman efficiency, launch powers, leakage and background are synthetic, "
    "non-authoritative placeholders."
)

# (center THz, width THz, weight) of the synthetic Raman gain shape
_GAIN_LINES = ((13.2, 3.0, 1.0), (14.7, 1.5, 0.35), (8.0, 4.0, 0.3), (18.0, 3.0, 0.2), (25.0, 6.0, 0.05), (32.0, 4.0, 0.03))
_PEAK_EFFICIENCY = 3e-11  # km^-1 GHz^-1, Stokes peak for a 1550 nm pump
_RAMAN_PUMPS_NM = (1520.0, 1545.0, 1570.0)


def synthetic_attenuation() -> list[list[float]]:
    """SMF-like loss (dB/km) every 5 nm over 1260-1700 nm."""
    rows = []
    for wl in np.arange(1260.0, 1700.0 + 1e-9, 5.0):
        um = wl / 1000.0
        db = 0.95 / um**4 + 0.02 + 6e11 * math.exp(-48.0 / um) + 0.03 * math.exp(-(((wl - 1383.0) / 15.0) ** 2))
        rows.append([float(wl), round(db, 6)])
    return rows


def _gain_times_shift(s_thz: float) -> float:
    return sum(w * math.exp(-(((s_thz - c) / width) ** 2)) for c, width, w in _GAIN_LINES)


def synthetic_raman_rows(temperature_k: float = 295.0, step_ghz: float = 250.0, max_shift_ghz: float = 45000.0):
    """Both sides of a Raman efficiency table in dB(km^-1 GHz^-1).

    The anti-Stokes side equals the Stokes side times the thermal ratio, and
    efficiency grows toward shorter pump wavelengths.
    """
    kt_thz = BOLTZMANN * temperature_k / PLANCK * 1e-12
    norm = max(s * _gain_times_shift(s) for s in np.linspace(0.1, 40, 4000))
    rows = []
    n_steps = int(round(max_shift_ghz / step_ghz))
    for pump in _RAMAN_PUMPS_NM:
        scale = _PEAK_EFFICIENCY * (1550.0 / pump) ** 3 / norm
        for m in range(-n_steps, n_steps + 1):
            s = abs(m) * step_ghz * 1e-3
            shape = _gain_times_shift(s)
            if s == 0:
                stokes = anti = shape * kt_thz
            else:
                occupation = 1.0 / math.expm1(s / kt_thz)
                stokes = s * shape * (1.0 + occupation)
                anti = s * shape * occupation
            value = scale * (stokes if m < 0 else anti)
            rows.append([pump, m * step_ghz, round(10 * math.log10(value), 6)])
    return rows


def _fiber(length_km: float) -> dict:
    return {
        "length_km": length_km,
        "attenuation": {"samples": synthetic_attenuation()},
        "sprs": {"samples": synthetic_raman_rows(), "unit": "db_per_km_ghz"},
        "rayleigh_db_per_km": -42.32,
        "beta2_ps2_per_km": -21.1,
        "gamma_per_w_km": 1.3,
        "temperature_k": 295.0,
    }


def multiband_sprs() -> dict:
    return {
        "schema_version": 1,
        "name": "multiband-sprs",
        "description": "C-band ASE loading counter-propagating to a quantum channel swept over the "
        "O- and E-bands, 50 km. " + PLACEHOLDER_NOTE,
        "fiber": _fiber(50.0),
        "quantum": {"frequency_thz": 220.0, "bandwidth_ghz": 100.0},
        "channels": [
            {
                "name": "c-band-ase",
                "frequency_thz": 193.75,
                "psd_dbm_per_ghz": -26.4,
                "bandwidth_ghz": 4400.0,
                "direction": "counter",
            }
        ],
        "leakage": [{"name": "ase-leakage", "psd_dbm_per_ghz": -95.0, "direction": "counter"}],
        "background_w_per_hz": 1e-25,
        "fwm_mode": "exact",
        "ase_step_ghz": 100.0,
        "sweep": {"axis": "quantum-frequency", "start": 202.5, "stop": 232.0, "step": 0.5},
    }


def fwm_length_sweep() -> dict:
    f_q = 194.7
    tones = [
        {"name": f"cw{off:+d}", "frequency_thz": round(f_q + off * 1e-3, 6), "power_dbm": 5.0, "direction": "co"}
        for off in (-100, -50, 50, 100)
    ]
    return {
        "schema_version": 1,
        "name": "fwm-length-sweep",
        "description": "Four co-propagating CW tones at -100/-50/+50/+100 GHz around a 194.7 THz "
        "quantum channel, swept in length. " + PLACEHOLDER_NOTE,
        "fiber": _fiber(25.0),
        "quantum": {"frequency_thz": f_q, "bandwidth_ghz": 10.0},
        "channels": tones,
        "leakage": [{"name": "notch-residual", "psd_dbm_per_ghz": -110.0, "direction": "co"}],
        "background_w_per_hz": 0.0,
        "fwm_mode": "both",
        "ase_step_ghz": 100.0,
        "sweep": {"axis": "length", "start": 0.5, "stop": 60.0, "step": 0.1},
    }


TEMPLATES = {"multiband-sprs": multiband_sprs, "fwm-length-sweep": fwm_length_sweep}


def template(name: str) -> dict:
    try:
        return TEMPLATES[name]()
    except KeyError:
        raise KeyError(f"unknown example '{name}'; available: {', '.join(sorted(TEMPLATES))}") from None
