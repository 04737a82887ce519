"""Flat key-value experiment configs (dotted sections, no nesting) and presets."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ConfigError
from .sequences import Kind, SequenceSpec


@dataclass(frozen=True)
class ExperimentConfig:
    spec: SequenceSpec
    depth: int
    levels: tuple[int, ...]
    replicates: int
    refine_depth: int
    seed: int
    oracle: bool
    outputs: tuple[str, ...]
    workers: int

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if not self.levels:
            raise ConfigError("levels must be nonempty")
        if self.depth < max(self.levels):
            raise ConfigError("depth must cover every requested level")
        if self.refine_depth < 1 or self.refine_depth & (self.refine_depth - 1):
            raise ConfigError("refine_depth must be a power of two")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        unknown = set(self.outputs) - set(STAGES)
        if unknown:
            raise ConfigError(f"unknown outputs: {sorted(unknown)}")

    @property
    def slug(self) -> str:
        import re

        return re.sub(r"[^a-z0-9]+", "-", self.spec.label.lower()).strip("-")


STAGES = ("classify", "tree", "moments", "census", "lil", "cuts", "bounds")

_DEFAULTS = {
    "spec.branching": "2",
    "spec.epsilon": "0.5",
    "run.depth": "8",
    "run.levels": "2,3,4,5,6",
    "run.replicates": "100000",
    "run.refine_depth": "128",
    "run.seed": "20260809",
    "run.oracle": "true",
    "run.outputs": "classify,tree,moments,census,lil,cuts,bounds",
    "run.workers": "1",
}


def parse_config_text(text: str) -> dict[str, str]:
    """Parse `key = value` lines; '#' starts a comment; keys are dotted."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def spec_from_mapping(mapping: Mapping[str, str]) -> SequenceSpec:
    kind_name = mapping.get("spec.kind")
    if kind_name is None:
        raise ConfigError("spec.kind is required")
    try:
        kind = Kind(kind_name.lower())
    except ValueError as exc:
        raise ConfigError(f"unknown spec.kind {kind_name!r}") from exc
    kw = {
        "branching": int(mapping.get("spec.branching", _DEFAULTS["spec.branching"])),
        "epsilon": float(mapping.get("spec.epsilon", _DEFAULTS["spec.epsilon"])),
    }
    try:
        if kind is Kind.GEOMETRIC:
            return SequenceSpec.geometric(float(mapping["spec.x"]), **kw)
        if kind is Kind.POWER:
            return SequenceSpec.power(float(mapping["spec.d"]), **kw)
        if kind is Kind.CONSTANT:
            return SequenceSpec.constant(float(mapping["spec.a"]), **kw)
        if kind is Kind.INVERSE_LOG_SQRT:
            return SequenceSpec.inverse_log_sqrt(**kw)
        if kind is Kind.LINEAR:
            return SequenceSpec.linear(**kw)
        table = [float(v) for v in mapping["spec.table"].split(",") if v.strip()]
        return SequenceSpec.custom(table, **kw)
    except KeyError as exc:
        raise ConfigError(f"missing config key for kind {kind.value}: {exc}") from exc
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(str(exc)) from exc


def config_from_mapping(mapping: Mapping[str, str], seed_override: Optional[int] = None) -> ExperimentConfig:
    merged = dict(_DEFAULTS)
    merged.update(mapping)
    try:
        levels = tuple(int(v) for v in merged["run.levels"].split(",") if v.strip())
        config = ExperimentConfig(
            spec=spec_from_mapping(merged),
            depth=int(merged["run.depth"]),
            levels=levels,
            replicates=int(merged["run.replicates"]),
            refine_depth=int(merged["run.refine_depth"]),
            seed=seed_override if seed_override is not None else int(merged["run.seed"]),
            oracle=_parse_bool(merged["run.oracle"]),
            outputs=tuple(v.strip() for v in merged["run.outputs"].split(",") if v.strip()),
            workers=int(merged["run.workers"]),
        )
    except ConfigError:
        raise
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return config


def load_config(path: str, seed_override: Optional[int] = None) -> ExperimentConfig:
    with open(path) as fh:
        return config_from_mapping(parse_config_text(fh.read()), seed_override)


def canonical_text(config: ExperimentConfig) -> str:
    spec = config.spec
    pairs = {
        "spec.kind": spec.kind.value,
        "spec.branching": str(spec.branching),
        "spec.epsilon": repr(spec.epsilon),
        "run.depth": str(config.depth),
        "run.levels": ",".join(str(v) for v in config.levels),
        "run.replicates": str(config.replicates),
        "run.refine_depth": str(config.refine_depth),
        "run.seed": str(config.seed),
        "run.oracle": str(config.oracle).lower(),
        "run.outputs": ",".join(config.outputs),
        "run.workers": str(config.workers),
    }
    if spec.x is not None:
        pairs["spec.x"] = repr(spec.x)
    if spec.d is not None:
        pairs["spec.d"] = repr(spec.d)
    if spec.a is not None:
        pairs["spec.a"] = repr(spec.a)
    if spec.table is not None:
        pairs["spec.table"] = ",".join(repr(v) for v in spec.table)
    return "\n".join(f"{k} = {v}" for k, v in sorted(pairs.items())) + "\n"


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(canonical_text(config).encode()).hexdigest()


_SQRT_1_6 = repr(math.sqrt(1.6))
_SQRT_1_8 = repr(math.sqrt(1.8))

PRESETS: dict[str, list[dict[str, str]]] = {
    # The three canonical regimes, end to end at desk scale.
    "paper-dichotomy": [
        {
            "spec.kind": "geometric",
            "spec.x": "1.5",
            "run.depth": "8",
            "run.levels": "2,3,4,5,6",
            "run.replicates": "100000",
        },
        {
            "spec.kind": "constant",
            "spec.a": "1",
            "run.depth": "8",
            "run.levels": "2,3,4,5,6",
            "run.replicates": "100000",
        },
        {
            "spec.kind": "linear",
            "spec.epsilon": "0.04",
            "run.depth": "8",
            "run.levels": "2,3,4,5,6",
            "run.replicates": "100000",
        },
    ],
    # The two plotted example constructions.
    "figure1": [
        {
            "spec.kind": "custom",
            "spec.table": f"{_SQRT_1_6},0.8,0.8",
            "run.depth": "3",
            "run.levels": "1,2,3",
            "run.replicates": "10000",
            "run.outputs": "classify,tree,moments",
        }
    ],
    "figure3": [
        {
            "spec.kind": "custom",
            "spec.table": f"{_SQRT_1_8},1.8,2.7",
            "spec.branching": "3",
            "spec.epsilon": "0.2",
            "run.depth": "3",
            "run.levels": "1,2,3",
            "run.replicates": "10000",
            "run.outputs": "classify,tree,moments",
        }
    ],
    # A light smoke preset for determinism checks.
    "smoke": [
        {
            "spec.kind": "geometric",
            "spec.x": "2",
            "run.depth": "5",
            "run.levels": "2,3",
            "run.replicates": "2000",
            "run.refine_depth": "32",
        }
    ],
}


def preset_configs(name: str, seed_override: Optional[int] = None) -> list[ExperimentConfig]:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choices: {sorted(PRESETS)}")
    return [config_from_mapping(m, seed_override) for m in PRESETS[name]]
