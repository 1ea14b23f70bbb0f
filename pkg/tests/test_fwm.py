import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coexnoise.fwm import (
    FwmProduct,
    effective_length,
    enumerate_products,
    fwm_efficiency_averaged,
    fwm_efficiency_exact,
    fwm_power,
    fwm_total,
    phase_mismatch,
    subtract_linear_contribution,
)
from coexnoise.oracle import integrate_fwm_field
from coexnoise.units import Frequency

from helpers import DB, F_Q, cw, flat_fiber, grid_tones, quantum

BETA2 = -21.1


def brute_force(freqs, f_q, half_bw):
    found = set()
    for i, j, k in itertools.product(range(len(freqs)), repeat=3):
        if i > j or k in (i, j):
            continue
        if abs(freqs[i] + freqs[j] - freqs[k] - f_q) <= half_bw:
            found.add((i, j, k))
    return found


def test_four_tone_plan_products():
    plan = grid_tones()
    prods = enumerate_products(plan, quantum(), flat_fiber())
    assert len(prods) == 4
    assert sorted(p.degeneracy for p in prods) == [3, 3, 6, 6]
    freqs = [ch.frequency.thz for ch in plan]
    assert {(p.i, p.j, p.k) for p in prods} == brute_force(freqs, F_Q, 0.005 + 1e-12)


def test_two_tone_and_single_tone_plans():
    two = [cw(50), cw(100)]
    prods = enumerate_products(two, quantum(), flat_fiber())
    assert [(p.i, p.j, p.k, p.degeneracy) for p in prods] == [(0, 0, 1, 3)]
    assert enumerate_products([cw(50)], quantum(), flat_fiber()) == []


def test_counter_and_shaped_channels_skipped():
    plan = grid_tones(direction="counter")
    assert enumerate_products(plan, quantum(), flat_fiber()) == []


def test_phase_mismatch_values():
    f = lambda off: Frequency(F_Q + off * 1e-3)
    deg = phase_mismatch(f(50), f(50), f(100), BETA2)
    nondeg = phase_mismatch(f(-100), f(50), f(-50), BETA2)
    assert deg == pytest.approx(BETA2 * (2 * math.pi) ** 2 * 0.05 * 0.05, rel=1e-12)
    assert abs(deg) == pytest.approx(2.0825, abs=1e-3)
    assert abs(nondeg) == pytest.approx(2 * abs(deg), rel=1e-12)
    assert 2 * math.pi / abs(deg) == pytest.approx(3.017, abs=1e-3)


def test_permutation_symmetry_of_mismatch():
    a, b, c = Frequency(194.6), Frequency(194.65), Frequency(194.8)
    assert phase_mismatch(a, b, c, BETA2) == phase_mismatch(b, a, c, BETA2)


alphas = st.floats(1e-4, 2.0)
lengths = st.floats(1e-3, 200.0)


@settings(max_examples=200, deadline=None)
@given(alphas, lengths)
def test_phase_matched_is_unity(a, L):
    assert fwm_efficiency_exact(0.0, a, L) == pytest.approx(1.0, rel=4e-15)


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), alphas, lengths)
def test_efficiency_bounds(db, a, L):
    eta = fwm_efficiency_exact(db, a, L)
    assert 0.0 <= eta <= 1.0 + 1e-12
    assert fwm_efficiency_averaged(db, a, L) > 0.0


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 50), st.floats(0.01, 1.0), st.floats(0.1, 100))
def test_averaged_is_ripple_midline(db, a, L):
    """Averaged efficiency sits halfway between the ripple's extremes."""
    base = a**2 / (a**2 + db**2)
    lo, hi = base, base * (1 + 4 * math.exp(-a * L) / (-math.expm1(-a * L)) ** 2)
    assert fwm_efficiency_averaged(db, a, L) == pytest.approx(0.5 * (lo + hi), rel=1e-12)
    assert lo <= fwm_efficiency_exact(db, a, L) <= hi * (1 + 1e-12)


def test_lossless_limit():
    a = 1e-9
    for db in (0.1, 2.08, 4.16, 20.0):
        for L in (1.0, 5.0, 10.0, 25.0):
            lhs = fwm_efficiency_exact(db, a, L) * effective_length(a, L) ** 2
            rhs = 4 * math.sin(db * L / 2) ** 2 / db**2
            assert lhs == pytest.approx(rhs, rel=1e-6)


def test_averaged_envelope_is_monotone():
    a = 0.2 * DB
    L = np.linspace(0.5, 100, 2000)
    vals = [math.exp(-a * x) * effective_length(a, x) ** 2 * fwm_efficiency_averaged(2.08, a, x) for x in L]
    diffs = np.diff(vals)
    assert np.all(diffs < 0)


def test_averaged_large_mismatch_limit():
    a, L = 0.05, 40.0
    db = 1e3
    expected = math.exp(-a * L) * (1 + math.exp(-2 * a * L)) / (a**2 + db**2)
    got = math.exp(-a * L) * effective_length(a, L) ** 2 * fwm_efficiency_averaged(db, a, L)
    assert got == pytest.approx(expected, rel=1e-12)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        fwm_efficiency_exact(1.0, 0.0, 10.0)
    with pytest.raises(ValueError):
        fwm_efficiency_averaged(1.0, 0.05, -1.0)
    prod = enumerate_products(grid_tones(), quantum(), flat_fiber())[0]
    with pytest.raises(ValueError, match="mode"):
        fwm_power(prod, grid_tones(), flat_fiber(), "bogus")


@pytest.mark.parametrize("L", [1.0, 2.0, 5.0, 10.0, 25.0, 50.0])
def test_power_matches_field_oracle(L):
    plan = grid_tones(5.0)
    fiber = flat_fiber(L)
    for p in enumerate_products(plan, quantum(), fiber):
        closed = fwm_power(p, plan, fiber, quantum=quantum())
        ref = integrate_fwm_field(p, plan, fiber, quantum=quantum())
        assert closed == pytest.approx(ref, rel=1e-9)


def test_per_wave_alpha_error_is_small():
    """Using one attenuation for all four waves is a sub-percent approximation over 100 GHz."""
    L = 25.0
    fiber = flat_fiber(L)
    plan = grid_tones(5.0)
    for p in enumerate_products(plan, quantum(), fiber):
        a = integrate_fwm_field(p, plan, fiber, quantum=quantum())
        b = integrate_fwm_field(p, plan, fiber, quantum=quantum(), per_wave_alpha=True)
        assert b == pytest.approx(a, rel=1e-12)  # flat attenuation: identical


def test_cubic_scaling():
    fiber = flat_fiber(25.0)
    base = fwm_total(enumerate_products(grid_tones(0.0), quantum(), fiber), grid_tones(0.0), fiber)
    up = fwm_total(enumerate_products(grid_tones(10.0), quantum(), fiber), grid_tones(10.0), fiber)
    assert up == pytest.approx(1000.0 * base, rel=1e-12)


def test_degenerate_vs_nondegenerate_weight():
    fiber = flat_fiber(1e-3)
    plan = grid_tones()
    prods = {p.degeneracy: p for p in enumerate_products(plan, quantum(), fiber)}
    # at tiny length both are phase matched, so the ratio is (6/3)^2
    assert fwm_power(prods[6], plan, fiber) / fwm_power(prods[3], plan, fiber) == pytest.approx(4.0, rel=1e-5)


def test_zero_power_tone_gives_zero():
    plan = [cw(-50), cw(50), cw(100, dbm=-math.inf)]
    prods = enumerate_products(plan, quantum(), flat_fiber())
    assert prods and all(fwm_power(p, plan, flat_fiber()) == 0.0 for p in prods)


def test_total_invariant_under_channel_order():
    fiber = flat_fiber(17.0)
    plan = grid_tones(3.0)
    ref = fwm_total(enumerate_products(plan, quantum(), fiber), plan, fiber)
    for perm in itertools.permutations(plan):
        perm = list(perm)
        got = fwm_total(enumerate_products(perm, quantum(), fiber), perm, fiber)
        assert got == pytest.approx(ref, rel=1e-13)


def test_subtract_linear_contribution():
    out = subtract_linear_contribution([3.0, 5.0], [1.0, 2.0])
    assert out.values.tolist() == [2.0, 3.0] and not out.clamped.any()
    with pytest.warns(RuntimeWarning, match="clamped"):
        out = subtract_linear_contribution([1.0, 5.0], [2.0, 2.0])
    assert out.values.tolist() == [0.0, 3.0] and out.clamped.tolist() == [True, False]
    with pytest.raises(ValueError, match="misaligned"):
        subtract_linear_contribution([1.0, 2.0], [1.0])


def test_subtraction_recovers_fwm():
    fiber = flat_fiber(25.0)
    plan = grid_tones(5.0)
    fwm = fwm_total(enumerate_products(plan, quantum(), fiber), plan, fiber)
    linear = np.array([1e-12, 2e-12])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        out = subtract_linear_contribution(linear + fwm, linear)
    assert out.values == pytest.approx([fwm, fwm], rel=1e-6)


def _period_means(db, a, L, n_periods):
    """Mean of exact and averaged efficiency over n ripple periods in mismatch at fixed L."""
    lo = 2 * math.pi * math.floor(db * L / (2 * math.pi)) / L
    grid = np.linspace(lo, lo + n_periods * 2 * math.pi / L, 4001)
    ex = np.mean([fwm_efficiency_exact(x, a, L) for x in grid])
    av = np.mean([fwm_efficiency_averaged(x, a, L) for x in grid])
    return ex, av


@pytest.mark.parametrize("db,L", [(2.08, 25.0), (4.16, 50.0), (20.0, 10.0)])
def test_averaged_tracks_exact_over_several_periods(db, L):
    a = 0.2 * DB
    ex, av = _period_means(db, a, L, 6)
    assert abs(ex - av) / av < 0.01
