"""JSON run configuration.

Schema (version 1), every field optional::

    {
      "schema_version": 1,
      "mode": "sweep" | "oracle" | "compare" | "asymptotics" | "dipwidth" | "wavepacket",
      "params": {"e0": 0, "a": 1, "g": 0.5, "f": <resonant>, "b": 1,
                 "j": 3, "n_imp": 22, "m": 1},
      "k_min": -pi, "k_max": pi, "steps": 2001,
      "threshold": 0.5,
      "n_series": [5, 10, 15, 22],       # dipwidth; asymptotics default 10..30
      "epsilon": 0.001,                  # asymptotics offset from k_res
      "packet": {"k0": <k_res>, "sigma": 12, "x0": <block centre>,
                 "t_final": <2 x transit>, "samples": 100, "length": 200},
      "output_path": "out"
    }

A run manifest (``{"config": {...}, ...}``) is accepted in place of a config.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import InvalidParameter, QuasiboundError
from .model import LatticeParams, resonant_k
from .wavepacket import block_bounds

SCHEMA_VERSION = 1
MODES = ("sweep", "oracle", "compare", "asymptotics", "dipwidth", "wavepacket")
PARAM_FIELDS = ("e0", "a", "g", "f", "b", "j", "n_imp", "m")
PACKET_FIELDS = ("k0", "sigma", "x0", "t_final", "samples", "length")
TOP_FIELDS = (
    "schema_version", "mode", "params", "k_min", "k_max", "steps", "threshold",
    "n_series", "epsilon", "packet", "output_path",
)
DIPWIDTH_SERIES = (5, 10, 15, 22)
DECAY_SERIES = tuple(range(10, 31))


class ConfigError(QuasiboundError):
    pass


class ParseError(ConfigError):
    def __init__(self, source: str, line: int, col: int, msg: str) -> None:
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


class ValidationError(ConfigError):
    def __init__(self, field: str, constraint: str, value: Any) -> None:
        super().__init__(f"{field}: must satisfy {constraint}, got {value!r}")
        self.field = field
        self.constraint = constraint
        self.value = value


@dataclass(frozen=True)
class PacketConfig:
    k0: float
    sigma: float = 12.0
    x0: float = 0.0
    t_final: float = 0.0
    samples: int = 100
    length: int = 200


@dataclass(frozen=True)
class RunConfig:
    params: LatticeParams = field(default_factory=LatticeParams)
    mode: str = "sweep"
    k_min: float = -math.pi
    k_max: float = math.pi
    steps: int = 2001
    threshold: float = 0.5
    n_series: tuple[int, ...] = ()
    epsilon: float = 1e-3
    packet: PacketConfig | None = None
    output_path: str = "out"


def _is_real(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_keys(obj: dict, allowed, where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ValidationError(f"{where}{key}", "known field", key)


def _real(raw: dict, name: str, default: float, where: str = "") -> float:
    v = raw.get(name, default)
    if not _is_real(v):
        raise ValidationError(where + name, "finite real number", v)
    return float(v)


def _int(raw: dict, name: str, default: int, where: str = "") -> int:
    v = raw.get(name, default)
    if not _is_int(v):
        raise ValidationError(where + name, "integer", v)
    return v


def _params_from_dict(raw: Any) -> LatticeParams:
    if not isinstance(raw, dict):
        raise ValidationError("params", "JSON object", raw)
    _check_keys(raw, PARAM_FIELDS, "params.")
    try:
        return LatticeParams(**raw)
    except InvalidParameter as exc:
        raise ValidationError(f"params.{exc.field}", exc.constraint, exc.value) from exc


def _packet_from_dict(raw: Any, p: LatticeParams) -> PacketConfig:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValidationError("packet", "JSON object", raw)
    _check_keys(raw, PACKET_FIELDS, "packet.")
    w = "packet."
    length = _int(raw, "length", 200, w)
    if length < (p.n_imp - 1) * p.j + 40:
        raise ValidationError("packet.length", f">= (n_imp - 1) * j + 40 = {(p.n_imp - 1) * p.j + 40}", length)
    first, last = block_bounds(p, length)
    k0 = raw.get("k0")
    k0 = resonant_k(p) if k0 is None else _real(raw, "k0", 0.0, w)
    sigma = _real(raw, "sigma", 12.0, w)
    if sigma <= 0:
        raise ValidationError("packet.sigma", "> 0", sigma)
    x0 = raw.get("x0")
    x0 = 0.5 * (first + last) if x0 is None else _real(raw, "x0", 0.0, w)
    t_final = raw.get("t_final")
    if t_final is None:
        t_final = 2.0 * (last - first) * p.b / (2.0 * p.a)
    else:
        t_final = _real(raw, "t_final", 0.0, w)
    if t_final < 0:
        raise ValidationError("packet.t_final", ">= 0", t_final)
    samples = _int(raw, "samples", 100, w)
    if samples < 1:
        raise ValidationError("packet.samples", ">= 1", samples)
    return PacketConfig(k0, sigma, x0, float(t_final), samples, length)


def config_from_dict(raw: Any) -> RunConfig:
    if not isinstance(raw, dict):
        raise ValidationError("<root>", "JSON object", raw)
    if "config" in raw and isinstance(raw["config"], dict):
        raw = raw["config"]
    _check_keys(raw, TOP_FIELDS, "")
    version = raw.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError("schema_version", f"== {SCHEMA_VERSION}", version)
    mode = raw.get("mode", "sweep")
    if mode not in MODES:
        raise ValidationError("mode", "one of " + "|".join(MODES), mode)
    params = _params_from_dict(raw.get("params", {}))

    k_min = _real(raw, "k_min", -math.pi)
    k_max = _real(raw, "k_max", math.pi)
    if not k_min < k_max:
        raise ValidationError("k_max", f"> k_min={k_min!r}", k_max)
    steps = _int(raw, "steps", 2001)
    if steps < 2:
        raise ValidationError("steps", ">= 2", steps)
    threshold = _real(raw, "threshold", 0.5)
    if not 0 < threshold < 1:
        raise ValidationError("threshold", "0 < threshold < 1", threshold)
    epsilon = _real(raw, "epsilon", 1e-3)
    if epsilon == 0:
        raise ValidationError("epsilon", "!= 0", epsilon)

    series = raw.get("n_series")
    if series is None:
        series = DECAY_SERIES if mode == "asymptotics" else DIPWIDTH_SERIES if mode == "dipwidth" else ()
    if not isinstance(series, (list, tuple)) or not all(_is_int(n) and n >= 1 for n in series):
        raise ValidationError("n_series", "list of integers >= 1", series)

    packet = _packet_from_dict(raw.get("packet"), params) if mode == "wavepacket" or raw.get("packet") is not None else None

    out = raw.get("output_path", "out")
    if not isinstance(out, str) or not out:
        raise ValidationError("output_path", "non-empty string", out)

    return RunConfig(params, mode, k_min, k_max, steps, threshold, tuple(series), epsilon, packet, out)


def config_to_dict(cfg: RunConfig) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "mode": cfg.mode,
        "params": cfg.params.as_dict(),
        "k_min": cfg.k_min,
        "k_max": cfg.k_max,
        "steps": cfg.steps,
        "threshold": cfg.threshold,
        "n_series": list(cfg.n_series),
        "epsilon": cfg.epsilon,
        "output_path": cfg.output_path,
    }
    if cfg.packet is not None:
        pk = cfg.packet
        out["packet"] = {
            "k0": pk.k0, "sigma": pk.sigma, "x0": pk.x0,
            "t_final": pk.t_final, "samples": pk.samples, "length": pk.length,
        }
    return out


def dumps(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2, sort_keys=False) + "\n"


def parse_json(text: str, source: str = "<string>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(source, exc.lineno, exc.colno, exc.msg) from exc


def load_raw(path: str | Path) -> dict:
    path = Path(path)
    raw = parse_json(path.read_text(encoding="utf-8"), str(path))
    if not isinstance(raw, dict):
        raise ValidationError("<root>", "JSON object", raw)
    if "config" in raw and isinstance(raw["config"], dict):
        raw = raw["config"]
    return raw


def load_config(path: str | Path) -> RunConfig:
    return config_from_dict(load_raw(path))
