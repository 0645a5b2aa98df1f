"""JSON config documents: parsing, validation, and round-trip serialization.

A document is a JSON object describing either a scenario or a sweep,
selected by an optional ``"kind"`` key (default ``"scenario"``). Unknown
keys are rejected by name at every nesting level; semantic violations
raise :class:`ConfigurationError` naming the field, syntax problems raise
:class:`ParseError` with the position.

Scenario keys: n (required), openness (required), commitment (required),
horizon, seed, topology, opinion_init, minority, convergence_tol.
Sweep keys: epsilon, phi (either {start, stop, step} or {values: [...]}),
runs_per_cell, seed, base (a scenario without openness/commitment/seed).
"""

from __future__ import annotations

import json
from typing import Any, Union

from .engine import (
    CompleteTopology,
    EdgeListTopology,
    MinorityConfig,
    ScaleFreeTopology,
    ScenarioConfig,
    SmallWorldTopology,
    Topology,
)
from .errors import ConfigurationError, ParseError
from .sweep import SweepSpec, grid_values

ConfigValue = Union[ScenarioConfig, SweepSpec]


def _reject_unknown(doc: dict, allowed: set[str], context: str = "") -> None:
    unknown = sorted(set(doc) - allowed)
    if unknown:
        prefix = f"{context}." if context else ""
        raise ConfigurationError(f"unknown key '{prefix}{unknown[0]}'")


def _as_int(field: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{field}: expected an integer, got {value!r}")
    return value


def _as_real(field: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{field}: expected a number, got {value!r}")
    return float(value)


def _as_interval(field: str, value: Any) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigurationError(f"{field}: expected a two-element interval [lo, hi], got {value!r}")
    return (_as_real(f"{field}[0]", value[0]), _as_real(f"{field}[1]", value[1]))


def _as_trait(field: str, value: Any):
    if isinstance(value, (list, tuple)):
        return _as_interval(field, value)
    return _as_real(field, value)


def _require(doc: dict, field: str, context: str = "") -> Any:
    if field not in doc:
        where = f" in {context}" if context else ""
        raise ConfigurationError(f"{field}: required field missing{where}")
    return doc[field]


_TOPOLOGY_KEYS = {
    "complete": set(),
    "small_world": {"k", "p"},
    "scale_free": {"m0", "m"},
    "edge_list": {"path"},
}


def _parse_topology(doc: Any) -> Topology:
    if not isinstance(doc, dict):
        raise ConfigurationError(f"topology: expected an object, got {doc!r}")
    kind = doc.get("kind")
    if kind not in _TOPOLOGY_KEYS:
        raise ConfigurationError(
            f"topology.kind: expected one of {sorted(_TOPOLOGY_KEYS)}, got {kind!r}"
        )
    _reject_unknown(doc, _TOPOLOGY_KEYS[kind] | {"kind"}, "topology")
    if kind == "complete":
        return CompleteTopology()
    if kind == "small_world":
        return SmallWorldTopology(
            k=_as_int("topology.k", _require(doc, "k", "topology")),
            p=_as_real("topology.p", _require(doc, "p", "topology")),
        )
    if kind == "scale_free":
        return ScaleFreeTopology(
            m0=_as_int("topology.m0", _require(doc, "m0", "topology")),
            m=_as_int("topology.m", _require(doc, "m", "topology")),
        )
    path = _require(doc, "path", "topology")
    if not isinstance(path, str):
        raise ConfigurationError(f"topology.path: expected a string, got {path!r}")
    return EdgeListTopology(path=path)


_MINORITY_KEYS = {"fraction", "count", "opinion", "openness", "commitment"}


def _parse_minority(doc: Any) -> MinorityConfig:
    if not isinstance(doc, dict):
        raise ConfigurationError(f"minority: expected an object, got {doc!r}")
    _reject_unknown(doc, _MINORITY_KEYS, "minority")
    kwargs: dict[str, Any] = {}
    if "fraction" in doc:
        kwargs["fraction"] = _as_real("minority.fraction", doc["fraction"])
    if "count" in doc:
        kwargs["count"] = _as_int("minority.count", doc["count"])
    for field in ("opinion", "openness", "commitment"):
        if field in doc:
            kwargs[field] = _as_real(f"minority.{field}", doc[field])
    return MinorityConfig(**kwargs)


_SCENARIO_KEYS = {
    "kind",
    "n",
    "openness",
    "commitment",
    "horizon",
    "seed",
    "topology",
    "opinion_init",
    "minority",
    "convergence_tol",
}


def _parse_scenario(doc: dict, context: str = "") -> ScenarioConfig:
    _reject_unknown(doc, _SCENARIO_KEYS, context)
    kwargs: dict[str, Any] = {
        "n": _as_int("n", _require(doc, "n", context)),
        "openness": _as_trait("openness", _require(doc, "openness", context)),
        "commitment": _as_trait("commitment", _require(doc, "commitment", context)),
    }
    if "horizon" in doc:
        kwargs["horizon"] = _as_int("horizon", doc["horizon"])
    if "seed" in doc:
        kwargs["master_seed"] = _as_int("seed", doc["seed"])
    if "topology" in doc:
        kwargs["topology"] = _parse_topology(doc["topology"])
    if "opinion_init" in doc:
        kwargs["opinion_init"] = _as_interval("opinion_init", doc["opinion_init"])
    if "minority" in doc and doc["minority"] is not None:
        kwargs["minority"] = _parse_minority(doc["minority"])
    if "convergence_tol" in doc:
        kwargs["convergence_tol"] = _as_real("convergence_tol", doc["convergence_tol"])
    return ScenarioConfig(**kwargs)


_AXIS_KEYS = {"start", "stop", "step", "values"}
_AXIS_DEFAULTS = {"epsilon": (0.0, 0.5, 0.05), "phi": (0.0, 1.0, 0.05)}


def _parse_axis(name: str, doc: Any) -> tuple[float, ...]:
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{name}: expected an object, got {doc!r}")
    _reject_unknown(doc, _AXIS_KEYS, name)
    if "values" in doc:
        if {"start", "stop", "step"} & set(doc):
            raise ConfigurationError(f"{name}: give either values or start/stop/step, not both")
        values = doc["values"]
        if not isinstance(values, list) or not values:
            raise ConfigurationError(f"{name}.values: expected a nonempty list")
        return tuple(_as_real(f"{name}.values", v) for v in values)
    default_start, default_stop, default_step = _AXIS_DEFAULTS[name]
    start = _as_real(f"{name}.start", doc.get("start", default_start))
    stop = _as_real(f"{name}.stop", doc.get("stop", default_stop))
    step = _as_real(f"{name}.step", doc.get("step", default_step))
    return grid_values(start, stop, step, name=name)


_SWEEP_KEYS = {"kind", "epsilon", "phi", "runs_per_cell", "seed", "base"}
_TEMPLATE_FORBIDDEN = {"openness", "commitment", "seed", "kind"}


def _parse_sweep(doc: dict) -> SweepSpec:
    _reject_unknown(doc, _SWEEP_KEYS)
    base_doc = _require(doc, "base")
    if not isinstance(base_doc, dict):
        raise ConfigurationError(f"base: expected an object, got {base_doc!r}")
    for field in _TEMPLATE_FORBIDDEN & set(base_doc):
        raise ConfigurationError(f"base.{field}: set by the sweep grid, not the template")
    template = dict(base_doc)
    template["openness"] = 0.0
    template["commitment"] = 0.0
    base = _parse_scenario(template, context="base")
    kwargs: dict[str, Any] = {
        "epsilon_values": _parse_axis("epsilon", doc.get("epsilon", {})),
        "phi_values": _parse_axis("phi", doc.get("phi", {})),
        "runs_per_cell": _as_int("runs_per_cell", doc.get("runs_per_cell", 10)),
        "base": base,
    }
    if "seed" in doc:
        kwargs["master_seed"] = _as_int("seed", doc["seed"])
    return SweepSpec(**kwargs)


def parse_config(source) -> ConfigValue:
    """Parse a JSON config document into a scenario or sweep.

    ``source`` may be bytes, text, or a readable (binary or text) stream.
    """
    raw = source.read() if hasattr(source, "read") else source
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"config is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be a JSON object")
    kind = doc.get("kind", "scenario")
    if kind == "scenario":
        return _parse_scenario(doc)
    if kind == "sweep":
        return _parse_sweep(doc)
    raise ConfigurationError(f"kind: expected 'scenario' or 'sweep', got {kind!r}")


def parse_config_file(path: str) -> ConfigValue:
    with open(path, "rb") as fh:
        return parse_config(fh)


def _trait_document(value) -> Any:
    return list(value) if isinstance(value, tuple) else value


def scenario_document(config: ScenarioConfig) -> dict:
    """Canonical JSON-ready form; re-parsing yields an equal config."""
    doc: dict[str, Any] = {
        "kind": "scenario",
        "n": config.n,
        "horizon": config.horizon,
        "seed": config.master_seed,
        "topology": config.topology.to_document(),
        "opinion_init": list(config.opinion_init),
        "openness": _trait_document(config.openness),
        "commitment": _trait_document(config.commitment),
        "convergence_tol": config.convergence_tol,
    }
    if config.minority is not None:
        doc["minority"] = config.minority.to_document()
    return doc


def sweep_document(spec: SweepSpec) -> dict:
    """Canonical JSON-ready form; re-parsing yields an equal spec."""
    base = scenario_document(spec.base)
    for field in ("kind", "seed", "openness", "commitment"):
        base.pop(field, None)
    return {
        "kind": "sweep",
        "epsilon": {"values": list(spec.epsilon_values)},
        "phi": {"values": list(spec.phi_values)},
        "runs_per_cell": spec.runs_per_cell,
        "seed": spec.master_seed,
        "base": base,
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
