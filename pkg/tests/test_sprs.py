import math

import numpy as np
import pytest
from scipy import integrate

from coexnoise.channels import PumpChannel
from coexnoise.oracle import integrate_sprs
from coexnoise.profiles import SprsEfficiencyProfile
from coexnoise.sprs import (
    ChannelRangeError,
    antistokes_scale,
    co_interaction_length,
    counter_interaction_length,
    raman_efficiency,
    sprs_power_co,
    sprs_power_counter,
    sprs_total,
)
from coexnoise.templates import synthetic_raman_rows
from coexnoise.units import Frequency, Power, PowerDensity

from helpers import DB, cw, flat_fiber, flat_sprs, quantum, two_alpha_fiber

RHO = 1e-11
F_P = 193.4


def pump(dbm=0.0, direction="co", f=F_P):
    return PumpChannel(Frequency(f), power=Power.from_dbm(dbm), direction=direction, name="p")


def test_zero_length_limit():
    q = quantum(F_P + 1.0)
    for L in (1e-6, 1e-9):
        f = flat_fiber(L)
        expected = 1e-3 * RHO * 10.0 * L
        assert sprs_power_co(pump(), q, f) == pytest.approx(expected, rel=1e-5)
        assert sprs_power_counter(pump(), q, f) == pytest.approx(expected, rel=1e-5)


def test_co_equal_alpha_peaks_at_inverse_alpha():
    alpha = 0.2 * DB
    q = quantum(F_P + 1.0)
    L = np.linspace(5.0, 40.0, 3501)
    p = [sprs_power_co(pump(), q, flat_fiber(x)) for x in L]
    assert L[int(np.argmax(p))] == pytest.approx(1.0 / alpha, abs=0.01)


def test_co_equal_alpha_closed_form():
    q = quantum(F_P + 1.0)
    f = flat_fiber(30.0)
    alpha = 0.2 * DB
    assert sprs_power_co(pump(), q, f) == pytest.approx(1e-3 * RHO * 10.0 * 30.0 * math.exp(-alpha * 30.0), rel=1e-14)


@pytest.mark.parametrize("L", [1.0, 17.0, 80.0])
def test_distinct_alpha_against_quadrature(L):
    f_q = F_P + 10.0
    fiber = two_alpha_fiber(L, F_P, 0.19, f_q, 0.33)
    q = quantum(f_q)
    a_p, a_q = 0.19 * DB, 0.33 * DB
    co_ref = integrate.quad(lambda z: math.exp(-a_p * z - a_q * (L - z)), 0, L, epsabs=0, epsrel=1e-13)[0]
    ctr_ref = integrate.quad(lambda z: math.exp(-(a_p + a_q) * z), 0, L, epsabs=0, epsrel=1e-13)[0]
    scale = 1e-3 * RHO * q.bandwidth_ghz
    assert sprs_power_co(pump(), q, fiber) == pytest.approx(scale * co_ref, rel=1e-9)
    assert sprs_power_counter(pump(), q, fiber) == pytest.approx(scale * ctr_ref, rel=1e-9)
    assert sprs_power_co(pump(), q, fiber) == pytest.approx(integrate_sprs(pump(), q, fiber, "co"), rel=1e-9)


def test_counter_saturates_monotonically():
    q = quantum(F_P + 1.0)
    a = 0.2 * DB
    limit = 1e-3 * RHO * 10.0 / (2 * a)
    vals = [sprs_power_counter(pump(), q, flat_fiber(L)) for L in (1, 10, 50, 100, 300, 1000)]
    assert all(b > a_ for a_, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(limit, rel=1e-12)


def test_series_branch_is_continuous():
    L, a = 40.0, 0.05
    exact = math.exp(-a * L) * L
    assert co_interaction_length(a, a, L) == pytest.approx(exact, rel=1e-15)
    assert co_interaction_length(a + 1e-10, a, L) == pytest.approx(exact, rel=1e-8)
    assert co_interaction_length(a + 1e-6, a, L) == pytest.approx(exact, rel=1e-4)
    assert counter_interaction_length(0.0, 0.0, L) == L


def test_co_counter_agree_to_first_order():
    q = quantum(F_P + 1.0)
    a = 0.2 * DB
    for L in (1e-2, 1e-3):
        f = flat_fiber(L)
        co, ctr = sprs_power_co(pump(), q, f), sprs_power_counter(pump(), q, f)
        assert abs(co - ctr) / co < (a * L) ** 2


def test_antistokes_scale():
    h, kb = 6.62607015e-34, 1.380649e-23
    assert antistokes_scale(0.0, 295.0) == 1.0
    assert antistokes_scale(13.2, 295.0) == pytest.approx(math.exp(-h * 13.2e12 / (kb * 295.0)), rel=1e-12)
    assert antistokes_scale(13.2, 295.0) == pytest.approx(0.117, abs=5e-4)
    vals = [antistokes_scale(s, 295.0) for s in np.linspace(0, 40, 81)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        antistokes_scale(-1.0, 295.0)


def test_mirrored_side_is_flagged():
    stokes_only = SprsEfficiencyProfile.from_samples([(1500, -20000, 4e-12), (1500, 0, 1e-12), (1600, -20000, 4e-12), (1600, 0, 1e-12)])
    fiber = flat_fiber(10.0, sprs=stokes_only)
    rho_s, synth_s = raman_efficiency(fiber, Frequency(F_P), Frequency(F_P - 10.0))
    rho_a, synth_a = raman_efficiency(fiber, Frequency(F_P), Frequency(F_P + 10.0))
    assert not synth_s and synth_a
    assert rho_a == pytest.approx(rho_s * antistokes_scale(10.0, 295.0), rel=1e-12)
    assert sprs_total([pump()], quantum(F_P + 10.0), fiber).synthesized


def test_antistokes_only_table_synthesizes_stokes():
    anti_only = SprsEfficiencyProfile.from_samples([(1500, 0, 1e-12), (1500, 20000, 2e-13), (1600, 0, 1e-12), (1600, 20000, 2e-13)])
    fiber = flat_fiber(10.0, sprs=anti_only)
    rho, synth = raman_efficiency(fiber, Frequency(F_P), Frequency(F_P - 20.0))
    assert synth and rho == pytest.approx(2e-13 / antistokes_scale(20.0, 295.0), rel=1e-12)


def test_empty_plan():
    t = sprs_total([], quantum(F_P + 1), flat_fiber())
    assert t.co_w == 0.0 and t.counter_w == 0.0


def test_identical_pumps_double():
    q, f = quantum(F_P + 3.0), flat_fiber()
    one = sprs_total([pump()], q, f).co_w
    assert sprs_total([pump(), pump()], q, f).co_w == 2 * one


def test_linear_in_pump_power():
    q, f = quantum(F_P + 3.0), flat_fiber()
    base = sprs_power_counter(pump(0.0), q, f)
    assert sprs_power_counter(pump(10.0), q, f) == pytest.approx(10 * base, rel=1e-12)


def test_directions_split():
    q, f = quantum(F_P + 3.0), flat_fiber()
    t = sprs_total([pump(direction="co"), pump(direction="counter")], q, f)
    assert t.co_w == sprs_power_co(pump(), q, f)
    assert t.counter_w == sprs_power_counter(pump(), q, f)


def test_ase_slab_refinement():
    prof = SprsEfficiencyProfile.from_samples(synthetic_raman_rows(), unit="db_per_km_ghz")
    fiber = flat_fiber(50.0, sprs=prof)
    slab = PumpChannel(Frequency(193.75), psd=PowerDensity.from_dbm_per_ghz(-26.4), bandwidth_ghz=4400.0,
                       direction="counter")
    q = quantum(215.0, 100.0)
    coarse = sprs_power_counter(slab, q, fiber, step_ghz=100.0)
    fine = sprs_power_counter(slab, q, fiber, step_ghz=50.0)
    assert abs(coarse - fine) / fine < 1e-3
    assert len(slab.slices(100.0)) == 44
    assert sum(p for _, p in slab.slices(100.0)) == pytest.approx(slab.total_power_w, rel=1e-12)


def test_uncovered_pump_names_channel():
    narrow = SprsEfficiencyProfile.from_samples([(1540, -1000, 1e-12), (1540, 1000, 1e-13), (1560, -1000, 1e-12), (1560, 1000, 1e-13)])
    fiber = flat_fiber(10.0, sprs=narrow)
    with pytest.raises(ChannelRangeError, match="channel 'far'") as info:
        sprs_total([cw(0.0, name="far", f0=F_P)], quantum(F_P + 5.0), fiber)
    assert info.value.channel == "far"
