"""Run configuration shared by the CLI commands and the experiment scripts."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .fock import DEFAULT_N_MAX, FockSpace


@dataclass(frozen=True)
class Grid:
    min: float
    max: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise ParameterError(f"grid count must be an integer >= 2, got {self.count!r}")
        if not self.max > self.min:
            raise ParameterError(f"grid must be strictly increasing ({self.min} .. {self.max})")

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.count))


@dataclass(frozen=True)
class RunConfig:
    zeta_sq: float = 3.0
    n_max: int = DEFAULT_N_MAX
    xi_grid: Grid = field(default_factory=lambda: Grid(0.0, 2.0, 201))
    t_grid: Grid = field(default_factory=lambda: Grid(0.0, 3.0, 61))
    out: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.zeta_sq) and self.zeta_sq > 0):
            raise ParameterError(f"zeta_sq must be > 0, got {self.zeta_sq!r}")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"format must be csv or json, got {self.format!r}")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        FockSpace(self.n_max)

    @property
    def zeta(self) -> float:
        return math.sqrt(self.zeta_sq)

    @property
    def space(self) -> FockSpace:
        return FockSpace(self.n_max)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        data = dict(data)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        for key in ("xi_grid", "t_grid"):
            if key in data and isinstance(data[key], dict):
                data[key] = Grid(**data[key])
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise ParameterError(f"cannot read config {path}: {exc}") from exc

    def with_overrides(self, **changes) -> RunConfig:
        """Apply non-None overrides; ``xi_min`` style keys patch the grids."""
        changes = {k: v for k, v in changes.items() if v is not None}
        xi = {k[3:]: changes.pop(k) for k in ("xi_min", "xi_max", "xi_count") if k in changes}
        t = {k[2:]: changes.pop(k) for k in ("t_min", "t_max", "t_count") if k in changes}
        if xi:
            changes["xi_grid"] = replace(self.xi_grid, **xi)
        if t:
            changes["t_grid"] = replace(self.t_grid, **t)
        return replace(self, **changes)
