"""Run settings shared by the CLI, the suites and the kernel computations."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction

__all__ = ["Settings", "DEFAULT_MAX_WEIGHT"]

DEFAULT_MAX_WEIGHT = Fraction(3)


@dataclass(frozen=True)
class Settings:
    max_weight: Fraction = DEFAULT_MAX_WEIGHT   # cap on kernel-dimension strata
    workers: int = 1                            # threads used by run_suite
    timings: bool = False                       # include wall_time in JSON reports

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_env(cls, env=None, **overrides) -> "Settings":
        """Read ``VOA_MAX_WEIGHT`` from ``env`` (default ``os.environ``), then apply overrides."""
        env = os.environ if env is None else env
        raw = env.get("VOA_MAX_WEIGHT")
        base = cls()
        if raw is not None:
            from .screening import WeightBoundError
            try:
                base = replace(base, max_weight=Fraction(raw))
            except (ValueError, ZeroDivisionError):
                raise WeightBoundError(f"VOA_MAX_WEIGHT={raw!r} is not a number") from None
        return replace(base, **overrides)
