"""Scenario JSON documents: schema, loading and conversion to domain objects.

The document is self-describing and versioned by ``schema_version``. Profile
CSV paths are resolved relative to the document's directory.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat, ValidationError, model_validator

from .channels import PumpChannel, QuantumChannel
from .leakage import LeakageSource
from .oracle import QuadratureConfig
from .profiles import AttenuationProfile, FiberSpec, ProfileFormatError, SprsEfficiencyProfile
from .scenario import Scenario, Sweep
from .units import Frequency, Power, PowerDensity, Wavelength

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid scenario document; ``problems`` holds one message per field."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ConfigFileNotFound(FileNotFoundError):
    pass


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _exactly_one(obj, names, what):
    given = [n for n in names if getattr(obj, n) is not None]
    if len(given) != 1:
        raise ValueError(f"{what}: give exactly one of {', '.join(names)}")
    return given[0]


class AttenuationModel(_Model):
    csv: Optional[str] = Field(None, description="CSV with columns wavelength_nm,attenuation_db_per_km")
    samples: Optional[list[tuple[float, float]]] = Field(None, description="[wavelength_nm, dB/km] pairs")
    constant_db_per_km: Optional[PositiveFloat] = None
    range_nm: Optional[tuple[PositiveFloat, PositiveFloat]] = None

    @model_validator(mode="after")
    def _one_source(self):
        src = _exactly_one(self, ("csv", "samples", "constant_db_per_km"), "attenuation")
        if src == "constant_db_per_km" and self.range_nm is None:
            raise ValueError("attenuation: constant_db_per_km needs range_nm")
        return self


class SprsModel(_Model):
    csv: Optional[str] = Field(
        None, description="CSV with columns pump_wavelength_nm,shift_ghz,efficiency_<unit>"
    )
    samples: Optional[list[tuple[float, float, float]]] = Field(
        None, description="[pump_wavelength_nm, shift_ghz (f_quantum - f_pump), efficiency] rows"
    )
    unit: Literal["per_km_ghz", "db_per_km_ghz", "per_km_nm", "db_per_km_nm"] = "db_per_km_ghz"
    zero: Optional[bool] = Field(None, description="SpRS switched off over pump_range_nm x shift_range_ghz")
    pump_range_nm: Optional[tuple[PositiveFloat, PositiveFloat]] = None
    shift_range_ghz: Optional[tuple[float, float]] = None

    @model_validator(mode="after")
    def _one_source(self):
        src = _exactly_one(self, ("csv", "samples", "zero"), "sprs")
        if src == "zero" and (self.pump_range_nm is None or self.shift_range_ghz is None):
            raise ValueError("sprs: zero profile needs pump_range_nm and shift_range_ghz")
        return self


class FiberModel(_Model):
    length_km: PositiveFloat
    attenuation: AttenuationModel
    sprs: SprsModel
    rayleigh_db_per_km: float = -42.32
    beta2_ps2_per_km: float = -21.1
    gamma_per_w_km: NonNegativeFloat = 1.3
    temperature_k: PositiveFloat = 295.0


class QuantumModel(_Model):
    frequency_thz: Optional[PositiveFloat] = None
    wavelength_nm: Optional[PositiveFloat] = None
    bandwidth_ghz: PositiveFloat

    @model_validator(mode="after")
    def _one_position(self):
        _exactly_one(self, ("frequency_thz", "wavelength_nm"), "quantum")
        return self


class ChannelModel(_Model):
    name: str = ""
    frequency_thz: Optional[PositiveFloat] = None
    wavelength_nm: Optional[PositiveFloat] = None
    power_dbm: Optional[float] = None
    power_w: Optional[NonNegativeFloat] = None
    psd_dbm_per_ghz: Optional[float] = None
    psd_w_per_hz: Optional[NonNegativeFloat] = None
    bandwidth_ghz: Optional[PositiveFloat] = None
    direction: Literal["co", "counter"] = "co"

    @model_validator(mode="after")
    def _shape(self):
        _exactly_one(self, ("frequency_thz", "wavelength_nm"), "channel")
        src = _exactly_one(self, ("power_dbm", "power_w", "psd_dbm_per_ghz", "psd_w_per_hz"), "channel")
        if src.startswith("psd") and self.bandwidth_ghz is None:
            raise ValueError("channel: shaped loading (psd_*) needs bandwidth_ghz")
        if src.startswith("power") and self.bandwidth_ghz is not None:
            raise ValueError("channel: CW tones take no bandwidth_ghz")
        return self


class LeakageModel(_Model):
    name: str = ""
    psd_dbm_per_ghz: Optional[float] = None
    psd_w_per_hz: Optional[NonNegativeFloat] = None
    direction: Literal["co", "counter"] = "counter"

    @model_validator(mode="after")
    def _one_psd(self):
        _exactly_one(self, ("psd_dbm_per_ghz", "psd_w_per_hz"), "leakage")
        return self


class SweepModel(_Model):
    axis: Literal["length", "quantum-frequency", "classical-power"]
    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[PositiveFloat] = None
    values: Optional[list[float]] = None

    @model_validator(mode="after")
    def _range_or_values(self):
        has_range = None not in (self.start, self.stop, self.step)
        if has_range == (self.values is not None):
            raise ValueError("sweep: give either start/stop/step or values")
        if has_range and self.stop < self.start:
            raise ValueError("sweep: stop must not precede start")
        return self


class OracleModel(_Model):
    tolerance: float = Field(1e-10, gt=0, lt=1)
    max_doublings: int = Field(24, ge=1)
    min_doublings: int = Field(4, ge=1)


class ScenarioDocument(_Model):
    schema_version: Literal[1] = SCHEMA_VERSION
    name: str = ""
    description: str = ""
    fiber: FiberModel
    quantum: QuantumModel
    channels: list[ChannelModel] = []
    leakage: list[LeakageModel] = []
    background_w_per_hz: NonNegativeFloat = 0.0
    fwm_mode: Literal["exact", "averaged", "both"] = "exact"
    ase_step_ghz: PositiveFloat = 100.0
    sweep: Optional[SweepModel] = None
    oracle: OracleModel = OracleModel()


def json_schema() -> dict:
    return ScenarioDocument.model_json_schema()


def _frequency(m) -> Frequency:
    if m.frequency_thz is not None:
        return Frequency(m.frequency_thz)
    return Wavelength(m.wavelength_nm).to_frequency()


def _attenuation(m: AttenuationModel, base: Path) -> AttenuationProfile:
    if m.csv is not None:
        return AttenuationProfile.from_csv(base / m.csv)
    if m.samples is not None:
        wl, att = zip(*m.samples) if m.samples else ((), ())
        return AttenuationProfile(list(wl), list(att))
    return AttenuationProfile.constant(m.constant_db_per_km, *m.range_nm)


def _sprs(m: SprsModel, base: Path) -> SprsEfficiencyProfile:
    if m.csv is not None:
        return SprsEfficiencyProfile.from_csv(base / m.csv)
    if m.samples is not None:
        return SprsEfficiencyProfile.from_samples(m.samples, unit=m.unit)
    return SprsEfficiencyProfile.zeros(m.pump_range_nm, m.shift_range_ghz)


def _channel(m: ChannelModel) -> PumpChannel:
    f = _frequency(m)
    kw = dict(direction=m.direction, name=m.name)
    if m.power_dbm is not None:
        return PumpChannel(f, power=Power.from_dbm(m.power_dbm), **kw)
    if m.power_w is not None:
        return PumpChannel(f, power=Power(m.power_w), **kw)
    psd = PowerDensity.from_dbm_per_ghz(m.psd_dbm_per_ghz) if m.psd_dbm_per_ghz is not None else PowerDensity(m.psd_w_per_hz)
    return PumpChannel(f, psd=psd, bandwidth_ghz=m.bandwidth_ghz, **kw)


def _leakage(m: LeakageModel) -> LeakageSource:
    psd = PowerDensity.from_dbm_per_ghz(m.psd_dbm_per_ghz) if m.psd_dbm_per_ghz is not None else PowerDensity(m.psd_w_per_hz)
    return LeakageSource(psd, m.direction, m.name)


def _build(label: str, problems: list, fn, *args):
    try:
        return fn(*args)
    except FileNotFoundError as exc:
        problems.append(f"{label}: file not found: {exc.filename}")
    except (ValueError, ProfileFormatError) as exc:
        problems.append(f"{label}: {exc}")
    return None


def to_scenario(doc: ScenarioDocument, base_dir: str | Path = ".") -> Scenario:
    base = Path(base_dir)
    problems: list[str] = []
    att = _build("fiber.attenuation", problems, _attenuation, doc.fiber.attenuation, base)
    sprs = _build("fiber.sprs", problems, _sprs, doc.fiber.sprs, base)
    quantum = _build("quantum", problems, lambda: QuantumChannel(_frequency(doc.quantum), doc.quantum.bandwidth_ghz))
    plan = [_build(f"channels[{n}]", problems, _channel, c) for n, c in enumerate(doc.channels)]
    leakage = [_build(f"leakage[{n}]", problems, _leakage, s) for n, s in enumerate(doc.leakage)]
    sweep = None
    if doc.sweep is not None:
        sw = doc.sweep
        if sw.values is not None:
            sweep = _build("sweep", problems, Sweep, sw.axis, tuple(sw.values))
        else:
            sweep = _build("sweep", problems, Sweep.from_range, sw.axis, sw.start, sw.stop, sw.step)
    if problems:
        raise ConfigError(problems)
    fib = doc.fiber
    fiber = _build(
        "fiber", problems, FiberSpec, fib.length_km, att, sprs,
        fib.rayleigh_db_per_km, fib.beta2_ps2_per_km, fib.gamma_per_w_km, fib.temperature_k,
    )
    if problems:
        raise ConfigError(problems)
    return Scenario(
        fiber=fiber,
        plan=tuple(plan),
        quantum=quantum,
        leakage=tuple(leakage),
        background=PowerDensity(doc.background_w_per_hz),
        fwm_mode=doc.fwm_mode,
        ase_step_ghz=doc.ase_step_ghz,
        sweep=sweep,
        name=doc.name,
    )


def parse_document(data: dict) -> ScenarioDocument:
    try:
        return ScenarioDocument.model_validate(data)
    except ValidationError as exc:
        problems = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"]) or "<document>"
            problems.append(f"{loc}: {err['msg']}")
        raise ConfigError(problems) from None


def load_document(path: str | Path) -> ScenarioDocument:
    path = Path(path)
    if not path.is_file():
        raise ConfigFileNotFound(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError([f"<document>: invalid JSON ({exc})"]) from None
    if not isinstance(data, dict):
        raise ConfigError(["<document>: top level must be a JSON object"])
    return parse_document(data)


def load_scenario(path: str | Path) -> tuple[Scenario, QuadratureConfig]:
    doc = load_document(path)
    scenario = to_scenario(doc, Path(path).parent)
    o = doc.oracle
    return scenario, QuadratureConfig(o.tolerance, o.max_doublings, o.min_doublings)
