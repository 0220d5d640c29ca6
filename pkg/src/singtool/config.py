"""Job configuration: one JSON document per invocation."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from .errors import ConfigError
from .heat import Spectral, TauSeries

COMMANDS = ("normal-form", "singular-curves", "regularize", "classify", "map-grid",
            "hyperbolic", "verify")


@dataclass(frozen=True)
class WSpec:
    form: str = "tau"  # "tau" or "spectral"
    taus: tuple = ()
    nodes: tuple = ()  # ((lam, f), ...)
    nvars: int = 2

    def build(self):
        if self.form == "tau":
            return TauSeries(self.taus, self.nvars)
        return Spectral(self.nodes, self.nvars)


@dataclass(frozen=True)
class ModelSpec:
    R: str = ""
    S: str = ""
    t: str = ""


@dataclass(frozen=True)
class JobConfig:
    command: str
    w: Optional[WSpec] = None
    model: Optional[ModelSpec] = None
    point: tuple = ()
    points: tuple = ()
    region: tuple = (-2.0, 2.0, -2.0, 2.0)
    resolution: int = 41
    k: Optional[int] = None
    tol: float = 1e-9
    kmax: int = 8
    out: Optional[str] = None
    formats: tuple = ("csv", "svg", "json")

    def to_dict(self) -> dict:
        return _plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def config_hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _plain(obj):
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    return obj


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", name)
    return value


def _numbers(value, name, length=None):
    if not isinstance(value, list):
        raise ConfigError(f"expected a list of numbers, got {value!r}", name)
    out = tuple(_number(v, f"{name}[{i}]") for i, v in enumerate(value))
    if length is not None and len(out) != length:
        raise ConfigError(f"expected {length} numbers, got {len(out)}", name)
    return out


def _integer(value, name, lo=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", name)
    if lo is not None and value < lo:
        raise ConfigError(f"must be >= {lo}", name)
    return value


def _check_keys(data, allowed, prefix):
    for key in data:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r}", f"{prefix}{key}")


def _parse_w(data):
    if not isinstance(data, dict):
        raise ConfigError("expected an object", "w")
    _check_keys(data, {f.name for f in fields(WSpec)}, "w.")
    form = data.get("form", "tau")
    if form not in ("tau", "spectral"):
        raise ConfigError(f"form must be 'tau' or 'spectral', got {form!r}", "w.form")
    nvars = _integer(data.get("nvars", 2), "w.nvars", lo=1)
    taus, nodes = (), ()
    if form == "tau":
        if "taus" not in data:
            raise ConfigError("missing tau list", "w.taus")
        taus = _numbers(data["taus"], "w.taus")
    else:
        raw = data.get("nodes")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("expected a non-empty list of [lam, f] pairs", "w.nodes")
        nodes = tuple(_numbers(p, f"w.nodes[{i}]", 2) for i, p in enumerate(raw))
    return WSpec(form, taus, nodes, nvars)


def _parse_model(data):
    if not isinstance(data, dict):
        raise ConfigError("expected an object", "model")
    _check_keys(data, {"R", "S", "t"}, "model.")
    for key in ("R", "S", "t"):
        if not isinstance(data.get(key), str) or not data[key].strip():
            raise ConfigError("expected a non-empty expression string", f"model.{key}")
    return ModelSpec(data["R"], data["S"], data["t"])


def parse_config(data: dict) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object", "<root>")
    _check_keys(data, {f.name for f in fields(JobConfig)}, "")
    command = data.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}", "command")
    kw = {"command": command}
    if data.get("w") is not None:
        kw["w"] = _parse_w(data["w"])
    if data.get("model") is not None:
        kw["model"] = _parse_model(data["model"])
    if "point" in data:
        kw["point"] = _numbers(data["point"], "point")
    if "points" in data:
        if not isinstance(data["points"], list):
            raise ConfigError("expected a list of points", "points")
        kw["points"] = tuple(_numbers(p, f"points[{i}]", 2) for i, p in enumerate(data["points"]))
    if "region" in data:
        kw["region"] = _numbers(data["region"], "region", 4)
    if "resolution" in data:
        kw["resolution"] = _integer(data["resolution"], "resolution", lo=2)
    if data.get("k") is not None:
        kw["k"] = _integer(data["k"], "k", lo=0)
    if "tol" in data:
        tol = _number(data["tol"], "tol")
        if tol <= 0:
            raise ConfigError("must be positive", "tol")
        kw["tol"] = tol
    if "kmax" in data:
        kw["kmax"] = _integer(data["kmax"], "kmax", lo=1)
    if data.get("out") is not None:
        if not isinstance(data["out"], str):
            raise ConfigError("expected a path string", "out")
        kw["out"] = data["out"]
    if "formats" in data:
        fm = data["formats"]
        if not isinstance(fm, list) or any(f not in ("csv", "svg", "json") for f in fm):
            raise ConfigError("formats must be a subset of csv, svg, json", "formats")
        kw["formats"] = tuple(fm)
    return JobConfig(**kw)


def loads(text: str) -> JobConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", "<json>") from exc
    return parse_config(data)


def load(path) -> JobConfig:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
