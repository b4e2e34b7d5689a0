"""Run configuration parsing and JSON report assembly."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Mapping

import numpy as np

from . import __version__
from .algebra import Algebra
from .checker import ConvexityReport
from .errors import ConfigError
from .oracle import DEFAULT_RADII

__all__ = ["RunConfig", "parse_config", "load_config", "base_report", "point_record", "dumps", "report_schema"]

_TOP_KEYS = {"algebra", "gamma", "domain", "checker", "oracle", "output", "point"}
_CHECKER_KEYS = {"samples", "seed", "tol", "gamma", "ptilde", "box"}
_ORACLE_KEYS = {"radii", "samples_per_radius", "seed"}


@dataclass
class RunConfig:
    algebra: dict
    gamma: Any = None
    domain: dict | None = None
    checker: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    output: str | None = None
    point: list | None = None

    @property
    def samples(self) -> int:
        return int(self.checker.get("samples", 32))

    @property
    def seed(self) -> int:
        return int(self.checker.get("seed", 0))

    @property
    def tol(self) -> float | None:
        tol = self.checker.get("tol")
        return None if tol is None else float(tol)

    @property
    def ptilde(self) -> int | None:
        return self.checker.get("ptilde", self.algebra.get("ptilde"))

    @property
    def gamma_spec(self):
        return self.checker.get("gamma", self.gamma)

    @property
    def box(self) -> tuple[float, float]:
        lo, hi = self.checker.get("box", (-2.0, 2.0))
        return float(lo), float(hi)

    @property
    def radii(self) -> tuple[float, ...]:
        return tuple(float(r) for r in self.oracle.get("radii", DEFAULT_RADII))

    @property
    def samples_per_radius(self) -> int:
        return int(self.oracle.get("samples_per_radius", 16))

    @property
    def oracle_seed(self) -> int:
        return int(self.oracle.get("seed", self.seed))

    def echo(self) -> dict:
        out = {"algebra": self.algebra, "gamma": self.gamma, "domain": self.domain,
               "checker": self.checker, "oracle": self.oracle}
        if self.point is not None:
            out["point"] = self.point
        return out


def _int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}")
    return value


def parse_config(doc: Mapping, seed: int | None = None) -> RunConfig:
    """Validate the single-document JSON config; ``seed`` overrides ``checker.seed``."""
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "algebra" not in doc:
        raise ConfigError("config needs an 'algebra' entry")
    checker = dict(doc.get("checker") or {})
    oracle = dict(doc.get("oracle") or {})
    for name, section, allowed in (("checker", checker, _CHECKER_KEYS), ("oracle", oracle, _ORACLE_KEYS)):
        bad = set(section) - allowed
        if bad:
            raise ConfigError(f"unknown {name} keys: {sorted(bad)}")
    if "samples" in checker:
        _int(checker["samples"], "checker.samples", 1)
    if "seed" in checker:
        _int(checker["seed"], "checker.seed")
    if checker.get("ptilde") is not None:
        _int(checker["ptilde"], "checker.ptilde", 0)
    if checker.get("tol") is not None and (
        isinstance(checker["tol"], bool) or not isinstance(checker["tol"], (int, float))
    ):
        raise ConfigError("checker.tol must be a number or null")
    if "box" in checker:
        box = checker["box"]
        if not (isinstance(box, list) and len(box) == 2 and box[0] < box[1]):
            raise ConfigError("checker.box must be [low, high] with low < high")
    if "samples_per_radius" in oracle:
        _int(oracle["samples_per_radius"], "oracle.samples_per_radius", 1)
    if "seed" in oracle:
        _int(oracle["seed"], "oracle.seed")
    if "radii" in oracle:
        radii = oracle["radii"]
        if not (isinstance(radii, list) and radii and all(isinstance(r, (int, float)) and r > 0 for r in radii)):
            raise ConfigError("oracle.radii must be a non-empty list of positive numbers")
    if seed is not None:
        checker["seed"] = seed
    point = doc.get("point")
    if point is not None and not (isinstance(point, list) and all(isinstance(v, (int, float)) for v in point)):
        raise ConfigError("point must be a list of numbers")
    return RunConfig(
        algebra=dict(doc["algebra"]) if isinstance(doc["algebra"], Mapping) else doc["algebra"],
        gamma=doc.get("gamma"),
        domain=doc.get("domain"),
        checker=checker,
        oracle=oracle,
        output=doc.get("output"),
        point=point,
    )


def load_config(path: str, seed: int | None = None) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {path}: {exc}") from None
    return parse_config(doc, seed)


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def base_report(command: str, config: RunConfig | None) -> dict:
    return {
        "tool": "hyperconvex",
        "version": __version__,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "config": config.echo() if config else None,
    }


def algebra_section(algebra: Algebra) -> dict:
    return algebra.summary()


def point_record(rec, probe=None, agreement=None) -> dict:
    cls = rec.classification
    out = {
        "w": rec.point.w,
        "residual": rec.point.residual,
        "kernel_dim": cls.kernel_dim if cls else None,
        "kind": cls.kind if cls else None,
        "min_eigenvalue": cls.min_eigenvalue if cls else None,
        "cross_check_error": cls.cross_check_error if cls else None,
        "witness": cls.witness if cls else None,
        "algebra_form_value": cls.algebra_form_value if cls else None,
        "error": rec.error,
    }
    if probe is not None or agreement is not None:
        out["oracle_outcome"] = probe.outcome if probe else None
        out["oracle_vacuous"] = probe.vacuous if probe else None
        out["agreement"] = agreement
    return out


def convexity_section(report: ConvexityReport) -> dict:
    return {"verdict": report.verdict, "sample_only": report.sample_only, "seed": report.seed}


def dumps(report: dict) -> str:
    """Serialize with shortest round-trip float repr (lossless for doubles)."""
    return json.dumps(_plain(report), indent=2, allow_nan=False)


def report_schema() -> dict:
    text = resources.files("hyperconvex").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
