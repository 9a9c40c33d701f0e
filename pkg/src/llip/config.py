"""Run configuration: defaults < ``$LLIP_CONFIG`` file < ``--config`` file < explicit flags."""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import SchemaError


@dataclass(frozen=True)
class Config:
    zero_tol: float = 1e-12
    consistency_tol: float = 1e-9
    continuity_threshold_factor: float = 50.0
    adjacency_radius_factor: float = 2.5
    max_breakpoints: int = 10_000
    seed: int = 0
    # a bound passes verification when max_violation <= verify_tol
    verify_tol: float = 1e-12

    def __post_init__(self):
        for f in dataclasses.fields(self):
            val = getattr(self, f.name)
            if f.name == "seed":
                if not isinstance(val, int) or isinstance(val, bool):
                    raise SchemaError("config: seed must be an integer")
                continue
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
                raise SchemaError(f"config: {f.name} must be a positive number, got {val!r}")
        if int(self.max_breakpoints) != self.max_breakpoints:
            raise SchemaError("config: max_breakpoints must be an integer")

    def updated(self, **changes) -> Config:
        changes = {k: v for k, v in changes.items() if v is not None}
        unknown = set(changes) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise SchemaError(f"config: unknown keys {sorted(unknown)}")
        return dataclasses.replace(self, **changes)

    def continuity_kw(self) -> dict:
        return {
            "radius_factor": self.adjacency_radius_factor,
            "threshold_factor": self.continuity_threshold_factor,
        }

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def load_config(path: str | None = None, **overrides) -> Config:
    from .io import load_json

    cfg = Config()
    env = os.environ.get("LLIP_CONFIG")
    for source in (env, path):
        if source:
            cfg = cfg.updated(**load_json(source))
    return cfg.updated(**overrides)
