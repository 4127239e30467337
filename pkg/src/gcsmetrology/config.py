"""Run configuration: a JSON document whose fields can be overridden from the command line."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

from .algebra import AlgebraKind, AlgebraParams
from .errors import ConfigError

__all__ = ["StateSpec", "InterferometerSpec", "SweepSpec", "OutputSpec", "RunConfig", "load_config",
           "kappa_from_transmission", "shipped_config"]

SWEEP_VARIABLES = ("phi", "kappa", "zeta_abs", "transmission")
FORMATS = ("csv", "json")


def kappa_from_transmission(t2: float) -> float:
    if not 0.0 <= t2 <= 1.0:
        raise ConfigError(f"transmission must lie in [0, 1], got {t2!r}")
    return 2.0 * math.acos(math.sqrt(t2))


@dataclass(frozen=True)
class StateSpec:
    kind: str = "gha"
    zeta_re: float = 1.0
    zeta_im: float = 0.0
    a: float = 0.5
    k: float = 1.0
    d: float = 0.2
    e: float = 0.1
    r: float = 0.0  # free constant of the admissibility inequality
    tail_tol: float = 1e-14

    @property
    def zeta(self) -> complex:
        return complex(self.zeta_re, self.zeta_im)

    @property
    def params(self) -> AlgebraParams:
        return AlgebraParams(a=self.a, d=self.d, e=self.e, k=self.k, r=self.r)


@dataclass(frozen=True)
class InterferometerSpec:
    """Angles for intensity schemes (``kappa``, ``kappa_prime``) and, optionally,
    separate ones for the homodyne schemes; these default to the former."""

    kappa: float = math.pi / 2
    kappa_prime: float = math.pi / 2
    homodyne_kappa: Optional[float] = None
    homodyne_kappa_prime: Optional[float] = None
    phi: float = math.pi / 2
    scenario: str = "b"
    phi_l: Any = "auto"
    eta: float = 1.0
    lo_amplitude: Optional[float] = None  # accepted, has no effect on ideal homodyne statistics

    @property
    def hom_kappa(self) -> float:
        return self.kappa if self.homodyne_kappa is None else self.homodyne_kappa

    @property
    def hom_kappa_prime(self) -> float:
        return self.kappa_prime if self.homodyne_kappa_prime is None else self.homodyne_kappa_prime

    @property
    def phi_l_value(self) -> Optional[float]:
        return None if self.phi_l == "auto" else float(self.phi_l)


@dataclass(frozen=True)
class SweepSpec:
    variable: str = "phi"
    start: float = 0.0
    stop: float = math.pi
    steps: int = 181


@dataclass(frozen=True)
class OutputSpec:
    path: Optional[str] = None
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    state: StateSpec = field(default_factory=StateSpec)
    interferometer: InterferometerSpec = field(default_factory=InterferometerSpec)
    sweep: SweepSpec = field(default_factory=SweepSpec)
    output: OutputSpec = field(default_factory=OutputSpec)
    scheme: str = "difference"
    ratio_kinds: tuple = ("gha", "su11")

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["ratio_kinds"] = list(self.ratio_kinds)
        return d

    def validate(self) -> "RunConfig":
        errs = []
        try:
            AlgebraKind.parse(self.state.kind)
        except ValueError as exc:
            errs.append(f"state.kind: {exc}")
        if not self.state.tail_tol > 0:
            errs.append("state.tail_tol: must be positive")
        bad = self.state.params.violations()
        if bad:
            errs.append("state: inadmissible deformation parameters (" + "; ".join(bad) + ")")
        it = self.interferometer
        for name, val in (("kappa", it.kappa), ("kappa_prime", it.kappa_prime),
                          ("homodyne_kappa", it.hom_kappa), ("homodyne_kappa_prime", it.hom_kappa_prime)):
            if not 0.0 <= val <= math.pi:
                errs.append(f"interferometer.{name}: must lie in [0, pi], got {val!r}")
        if str(it.scenario).lower() not in ("b", "c"):
            errs.append(f"interferometer.scenario: expected 'b' or 'c', got {it.scenario!r}")
        if it.phi_l != "auto":
            try:
                float(it.phi_l)
            except (TypeError, ValueError):
                errs.append(f"interferometer.phi_l: expected 'auto' or radians, got {it.phi_l!r}")
        if not 0.0 < it.eta <= 1.0:
            errs.append(f"interferometer.eta: must lie in (0, 1], got {it.eta!r}")
        sw = self.sweep
        if sw.variable not in SWEEP_VARIABLES:
            errs.append(f"sweep.variable: expected one of {SWEEP_VARIABLES}, got {sw.variable!r}")
        if int(sw.steps) != sw.steps or sw.steps < 2:
            errs.append(f"sweep.steps: must be an integer >= 2, got {sw.steps!r}")
        if not sw.start < sw.stop:
            errs.append(f"sweep.start/stop: need start < stop, got {sw.start!r} >= {sw.stop!r}")
        lims = {"kappa": (0.0, math.pi), "transmission": (0.0, 1.0), "zeta_abs": (0.0, math.inf)}
        if sw.variable in lims:
            lo, hi = lims[sw.variable]
            if sw.start < lo or sw.stop > hi:
                errs.append(f"sweep: {sw.variable} range must lie in [{lo}, {hi}]")
        if self.output.format not in FORMATS:
            errs.append(f"output.format: expected one of {FORMATS}, got {self.output.format!r}")
        for kind in self.ratio_kinds:
            try:
                AlgebraKind.parse(kind)
            except ValueError as exc:
                errs.append(f"ratio_kinds: {exc}")
        if errs:
            raise ConfigError("; ".join(errs))
        return self


_SECTIONS = {"state": StateSpec, "interferometer": InterferometerSpec, "sweep": SweepSpec, "output": OutputSpec}
_NUMERIC = {
    "state": ("zeta_re", "zeta_im", "a", "k", "d", "e", "r", "tail_tol"),
    "interferometer": ("kappa", "kappa_prime", "homodyne_kappa", "homodyne_kappa_prime", "phi", "eta",
                       "lo_amplitude"),
    "sweep": ("start", "stop", "steps"),
}
# keys accepted in a document in addition to the dataclass fields
_EXTRA_KEYS = {
    "interferometer": {"transmission", "transmission_prime"},
}


def _section(name: str, raw: Any, source: str):
    cls = _SECTIONS[name]
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: field '{name}' must be an object")
    allowed = set(cls.__dataclass_fields__) | _EXTRA_KEYS.get(name, set())
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(f"{source}: unknown field(s) {', '.join(f'{name}.{u}' for u in unknown)}")
    raw = dict(raw)
    if name == "interferometer":
        if "transmission" in raw:
            raw["kappa"] = kappa_from_transmission(_num(raw.pop("transmission"), source, "interferometer.transmission"))
        if "transmission_prime" in raw:
            raw["kappa_prime"] = kappa_from_transmission(
                _num(raw.pop("transmission_prime"), source, "interferometer.transmission_prime"))
    for key, val in raw.items():
        if key in _NUMERIC.get(name, ()) and val is not None:
            raw[key] = _num(val, source, f"{name}.{key}")
    return cls(**raw)


def _num(val, source, name) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{source}: field '{name}' must be a number, got {val!r}")
    return val


def config_from_dict(doc: Dict[str, Any], source: str = "<config>") -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"{source}: top level must be a JSON object")
    allowed = set(_SECTIONS) | {"scheme", "ratio_kinds", "description"}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"{source}: unknown field(s) {', '.join(unknown)}")
    kwargs = {name: _section(name, doc[name], source) for name in _SECTIONS if name in doc}
    if "scheme" in doc:
        kwargs["scheme"] = str(doc["scheme"])
    if "ratio_kinds" in doc:
        kinds = doc["ratio_kinds"]
        if not (isinstance(kinds, list) and len(kinds) == 2):
            raise ConfigError(f"{source}: field 'ratio_kinds' must be a list of two algebra kinds")
        kwargs["ratio_kinds"] = tuple(str(k) for k in kinds)
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    """Parse a JSON config file; syntax errors report line and column."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return config_from_dict(doc, str(path))


def apply_overrides(cfg: RunConfig, **over) -> RunConfig:
    """Apply flag values (``None`` means not given) onto a config."""
    st, it, sw, out = cfg.state, cfg.interferometer, cfg.sweep, cfg.output
    st_keys = {"kind": "kind", "zeta_re": "zeta_re", "zeta_im": "zeta_im", "a": "a", "k": "k", "d": "d",
               "e": "e", "r": "r", "tail_tol": "tail_tol"}
    st = replace(st, **{v: over[k] for k, v in st_keys.items() if over.get(k) is not None})
    it_over = {k: over[k] for k in ("kappa", "kappa_prime", "homodyne_kappa", "homodyne_kappa_prime", "phi",
                                    "scenario", "eta") if over.get(k) is not None}
    if over.get("transmission") is not None:
        it_over["kappa"] = kappa_from_transmission(over["transmission"])
    if over.get("transmission_prime") is not None:
        it_over["kappa_prime"] = kappa_from_transmission(over["transmission_prime"])
    if over.get("phi_l") is not None:
        it_over["phi_l"] = over["phi_l"]
    it = replace(it, **it_over)
    sw_keys = {"sweep": "variable", "start": "start", "stop": "stop", "steps": "steps"}
    sw = replace(sw, **{v: over[k] for k, v in sw_keys.items() if over.get(k) is not None})
    out_keys = {"out": "path", "format": "format"}
    out = replace(out, **{v: over[k] for k, v in out_keys.items() if over.get(k) is not None})
    cfg = replace(cfg, state=st, interferometer=it, sweep=sw, output=out)
    if over.get("scheme") is not None:
        cfg = replace(cfg, scheme=over["scheme"])
    return cfg


def shipped_config(name: str) -> Path:
    """Path of a bundled configuration, e.g. ``shipped_config("fig2_gha")``."""
    from importlib import resources

    ref = resources.files("gcsmetrology") / "configs" / f"{name}.json"
    if not ref.is_file():
        raise ConfigError(f"no shipped config named {name!r}")
    return Path(str(ref))
