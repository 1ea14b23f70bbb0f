"""Interference noise at a quantum channel sharing a fiber with classical WDM traffic.

Spontaneous Raman scattering, four-wave mixing and linear leakage are
computed in closed form; :mod:`coexnoise.oracle` re-derives each term by
direct quadrature.
"""

__version__ = "0.1.0"

from .channels import PumpChannel, QuantumChannel
from .fwm import (
    FwmProduct,
    enumerate_products,
    fwm_efficiency_averaged,
    fwm_efficiency_exact,
    fwm_power,
    phase_mismatch,
    subtract_linear_contribution,
)
from .leakage import LeakageSource, copropagated_leakage, rayleigh_backscatter
from .profiles import AttenuationProfile, FiberSpec, ProfileRangeError, SprsEfficiencyProfile, profile_lookup
from .scenario import NoiseBudget, Scenario, Sweep, model_uncertainty_band, psd_to_photon_rate, run_budget, run_sweep
from .sprs import antistokes_scale, sprs_power_co, sprs_power_counter, sprs_total
from .units import Frequency, Power, PowerDensity, Wavelength

__all__ = [
    "AttenuationProfile",
    "FiberSpec",
    "Frequency",
    "FwmProduct",
    "LeakageSource",
    "NoiseBudget",
    "Power",
    "PowerDensity",
    "ProfileRangeError",
    "PumpChannel",
    "QuantumChannel",
    "Scenario",
    "SprsEfficiencyProfile",
    "Sweep",
    "Wavelength",
    "antistokes_scale",
    "copropagated_leakage",
    "enumerate_products",
    "fwm_efficiency_averaged",
    "fwm_efficiency_exact",
    "fwm_power",
    "model_uncertainty_band",
    "phase_mismatch",
    "profile_lookup",
    "psd_to_photon_rate",
    "rayleigh_backscatter",
    "run_budget",
    "run_sweep",
    "sprs_power_co",
    "sprs_power_counter",
    "sprs_total",
    "subtract_linear_contribution",
]
