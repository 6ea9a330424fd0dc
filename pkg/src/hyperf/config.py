"""Experiment configuration: dataclasses, validation, JSON loading."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction

SUITES = ("algebra", "duality", "hl", "hy", "hyp", "multiplier", "paley")
INSTANCES = ("conj_su2", "dunkl_ramirez")
FORMATS = ("json", "csv")


class ConfigError(ValueError):
    pass


def parse_number(v) -> float:
    """Floats, ints, or ``"num/den"`` strings."""
    if isinstance(v, bool):
        raise ConfigError(f"expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse number {v!r}") from exc
    raise ConfigError(f"expected a number, got {v!r}")


@dataclass
class FamilyConfig:
    kind: str = "random"
    count: int = 200
    decay: float = 2.0


@dataclass
class MultiplierConfig:
    symbols: int = 2
    trials: int = 1
    level: int = 20


@dataclass
class OutputConfig:
    path: str | None = None
    format: str = "json"
    per_function: bool = True


@dataclass
class ExperimentConfig:
    instance: str = "conj_su2"
    a: str = "1/3"
    suites: list = field(default_factory=lambda: ["hy"])
    p_grid: list = field(default_factory=lambda: ["5/4", "4/3", "3/2", "7/4", "2"])
    b_grid: list = field(default_factory=list)
    q_grid: list = field(default_factory=lambda: ["2", "3", "4"])
    level: int = 40
    seed: int = 0
    family: FamilyConfig = field(default_factory=FamilyConfig)
    multiplier: MultiplierConfig = field(default_factory=MultiplierConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    timings: bool = False

    def validate(self) -> "ExperimentConfig":
        if self.instance not in INSTANCES:
            raise ConfigError(f"instance must be one of {INSTANCES}, got {self.instance!r}")
        if self.instance == "dunkl_ramirez":
            try:
                a = Fraction(str(self.a))
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"parameter a must be 'num/den', got {self.a!r}") from exc
            if not 0 < a <= Fraction(1, 2):
                raise ConfigError(f"parameter a must lie in (0, 1/2], got {self.a}")
        if not self.suites:
            raise ConfigError("suite list is empty")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites {bad}; choose from {SUITES}")
        for name in ("p_grid", "b_grid", "q_grid"):
            for v in getattr(self, name):
                if parse_number(v) < 1:
                    raise ConfigError(f"{name} entries must be >= 1, got {v}")
        if not isinstance(self.level, int) or self.level < 0:
            raise ConfigError(f"level must be a nonnegative integer, got {self.level!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.family.kind not in ("spike", "random", "lacunary"):
            raise ConfigError(f"unknown family kind {self.family.kind!r}")
        if self.family.count < 1:
            raise ConfigError("family.count must be >= 1")
        if self.multiplier.symbols < 0 or self.multiplier.trials < 1:
            raise ConfigError("multiplier.symbols >= 0 and multiplier.trials >= 1 required")
        if self.output.format not in FORMATS:
            raise ConfigError(f"output.format must be one of {FORMATS}")
        return self

    @property
    def p_values(self) -> list[float]:
        return [parse_number(v) for v in self.p_grid]

    @property
    def b_values(self) -> list[float]:
        return [parse_number(v) for v in self.b_grid]

    @property
    def q_values(self) -> list[float]:
        return [parse_number(v) for v in self.q_grid]

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_NESTED = {"family": FamilyConfig, "multiplier": MultiplierConfig, "output": OutputConfig}


def _build(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where or 'config'} must be a mapping")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown keys in {where or 'config'}: {unknown}")
    kwargs = {}
    for k, v in data.items():
        sub = _NESTED.get(k) if cls is ExperimentConfig else None
        kwargs[k] = _build(sub, v, k) if sub else v
    return cls(**kwargs)


def config_from_dict(data: dict) -> ExperimentConfig:
    try:
        return _build(ExperimentConfig, data, "").validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)
