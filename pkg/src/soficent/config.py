"""Experiment configuration with defaults and a stable JSON round trip."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, fields

from .covers import standard_partition, trivial_cover, window_partition
from .measures import Bernoulli, parry_measure
from .microstates import DFS_NODE_CAP, ENUM_CAP, EXACT_VERTEX_CAP
from .registry import ConfigError, default_schedule, load_system

SOFIC_QUANTITIES = ("h_topological", "h_cover", "h_space_conditional", "h_star",
                    "h_measure_cover", "bowen_measure_entropy")
AMENABLE_QUANTITIES = ("h_a_topological", "h_a_tail")
QUANTITIES = SOFIC_QUANTITIES + AMENABLE_QUANTITIES

_TUPLES = ("d", "F_radii", "delta", "eps", "folner")


@dataclass(frozen=True)
class ExperimentConfig:
    system: str = "full-shift-2"
    quantity: str = "h_topological"
    depth: int = 6
    d: tuple = ()  # empty: per-system default
    F_radii: tuple = (1,)
    delta: tuple = (0.5, 0.25)
    eps: tuple = ()  # empty: 0.99 w_e
    R: int | None = None
    folner: tuple = (5, 10, 15, 20)
    cover: str = "standard"
    family_radius: int = 2
    measure: str = "bernoulli:0.5"
    enum_cap: int = ENUM_CAP
    vertex_cap: int = EXACT_VERTEX_CAP
    node_cap: int = DFS_NODE_CAP
    samples: int = 10_000
    seed: int = 0
    tolerance: float = 0.05

    def __post_init__(self):
        for name in _TUPLES:
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.quantity not in QUANTITIES:
            raise ConfigError(f"unknown quantity {self.quantity!r}; choose from {', '.join(QUANTITIES)}")
        if any(int(x) < 1 for x in self.d + self.folner):
            raise ConfigError("d values and Følner indices must be positive")
        if any(int(r) < 0 for r in self.F_radii) or not self.F_radii:
            raise ConfigError("F radii must be non-negative and non-empty")
        if not self.folner:
            raise ConfigError("need at least one Følner index")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        out = asdict(self)
        for name in _TUPLES:
            out[name] = list(out[name])
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    # -- materialization ---------------------------------------------------

    def load_system(self):
        return load_system(self.system, self.depth)

    def schedule(self, sys):
        return default_schedule(sys, self.d or None, self.F_radii, self.delta, self.eps or None,
                                self.R, enum_cap=self.enum_cap, vertex_cap=self.vertex_cap,
                                node_cap=self.node_cap, tolerance=self.tolerance,
                                samples=self.samples, seed=self.seed)


def parse_cover(sys, text: str):
    if text == "standard":
        return standard_partition(sys)
    if text == "trivial":
        return trivial_cover(sys)
    m = re.fullmatch(r"window-r(\d+)", text)
    if m:
        return window_partition(sys, int(m.group(1)))
    raise ConfigError(f"unknown cover {text!r}; use standard, trivial or window-rN")


def parse_measure(sys, text: str):
    kind, _, arg = text.partition(":")
    try:
        if kind == "parry":
            return parry_measure(sys)
        if kind == "bernoulli":
            vals = [float(v) for v in arg.split(",")] if arg else [1 / sys.k] * sys.k
            if len(vals) == 1 and sys.k == 2:
                vals = [1 - vals[0], vals[0]]
            if len(vals) != sys.k:
                raise ConfigError(f"Bernoulli weights need {sys.k} entries")
            return Bernoulli(tuple(vals))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown measure {text!r}; use bernoulli:p or parry")
