"""Builders for small synthetic fibers and plans used across the tests."""
import math

import numpy as np

from coexnoise.channels import PumpChannel, QuantumChannel
from coexnoise.profiles import AttenuationProfile, FiberSpec, SprsEfficiencyProfile
from coexnoise.units import Frequency, Power

F_Q = 194.7  # THz
DB = math.log(10) / 10  # dB/km -> 1/km


def flat_sprs(rho=1e-11, pumps=(1200.0, 1800.0), max_shift_ghz=60000.0):
    shifts = np.array([-max_shift_ghz, max_shift_ghz])
    return SprsEfficiencyProfile(tuple(pumps), tuple((shifts, np.full(2, rho)) for _ in pumps))


def flat_fiber(length_km=50.0, alpha_db=0.2, sprs=None, **kw):
    att = AttenuationProfile.constant(alpha_db, 1200.0, 1800.0)
    return FiberSpec(length_km, att, sprs or flat_sprs(), **kw)


def two_alpha_fiber(length_km, f_pump, alpha_pump_db, f_quantum, alpha_quantum_db, sprs=None):
    """Fiber whose attenuation hits exactly the requested values at two frequencies."""
    pts = sorted([(Frequency(f_pump).to_wavelength().nm, alpha_pump_db),
                  (Frequency(f_quantum).to_wavelength().nm, alpha_quantum_db)])
    wl = [pts[0][0] - 50.0, pts[0][0], pts[1][0], pts[1][0] + 50.0]
    att = [pts[0][1], pts[0][1], pts[1][1], pts[1][1]]
    return FiberSpec(length_km, AttenuationProfile(wl, att), sprs or flat_sprs())


def cw(offset_ghz, dbm=0.0, direction="co", f0=F_Q, name=""):
    return PumpChannel(Frequency(f0 + offset_ghz * 1e-3), power=Power.from_dbm(dbm), direction=direction,
                       name=name or f"{offset_ghz:+g}")


def grid_tones(dbm=0.0, direction="co"):
    return [cw(off, dbm, direction) for off in (-100, -50, 50, 100)]


def quantum(f=F_Q, bw=10.0):
    return QuantumChannel(Frequency(f), bw)

# one line per acceptance check, printed in the terminal summary
ACCEPTANCE_RESULTS = []
