"""Closed form versus quadrature, mechanism by mechanism, for one scenario."""
from __future__ import annotations

from dataclasses import dataclass, replace

from .fwm import enumerate_products, fwm_power
from .leakage import rayleigh_backscatter
from .oracle import (
    OracleConvergenceError,
    QuadratureConfig,
    integrate_fwm_field,
    integrate_rayleigh,
    integrate_sprs,
)
from .scenario import Scenario, check_scenario
from .sprs import sprs_power_co, sprs_power_counter


@dataclass(frozen=True)
class CheckRow:
    mechanism: str
    item: str
    closed_form: float
    oracle: float
    rel_error: float
    status: str  # "ok", "fail" or "nonconverged"


def _rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def cross_check(s: Scenario, cfg: QuadratureConfig, tolerance: float) -> list[CheckRow]:
    """Compare every closed-form term of the base scenario with its oracle."""
    s = replace(s, sweep=None)
    check_scenario(s)
    rows = []

    def add(mechanism, item, closed, oracle_fn):
        try:
            ref = oracle_fn()
        except OracleConvergenceError:
            rows.append(CheckRow(mechanism, item, float(closed), float("nan"), float("nan"), "nonconverged"))
            return
        closed, ref = float(closed), float(ref)
        err = _rel(closed, ref)
        rows.append(CheckRow(mechanism, item, closed, ref, err, "ok" if err < tolerance else "fail"))

    fiber, q = s.fiber, s.quantum
    for ch in s.plan:
        if ch.direction == "co":
            add("sprs_co", ch.label, sprs_power_co(ch, q, fiber, s.ase_step_ghz),
                lambda ch=ch: integrate_sprs(ch, q, fiber, "co", cfg, step_ghz=s.ase_step_ghz))
        else:
            add("sprs_counter", ch.label, sprs_power_counter(ch, q, fiber, s.ase_step_ghz),
                lambda ch=ch: integrate_sprs(ch, q, fiber, "counter", cfg, step_ghz=s.ase_step_ghz))
    for p in enumerate_products(s.plan, q, fiber):
        item = f"({p.i},{p.j},{p.k}) D={p.degeneracy}"
        add("fwm", item, fwm_power(p, s.plan, fiber, "exact", q),
            lambda p=p: integrate_fwm_field(p, s.plan, fiber, cfg, quantum=q))
    for n, src in enumerate(s.leakage):
        if src.direction == "counter":
            add("rayleigh_ase", src.name or f"leakage[{n}]", rayleigh_backscatter(src, fiber, q),
                lambda src=src: integrate_rayleigh(src.psd.w_per_hz, fiber, q, cfg))
    return rows

