"""Tolerance configuration shared across the package."""

from __future__ import annotations

import os

DEFAULT_TOL = 1e-10
TOL_ENV_VAR = "TWISTOR_GA_TOL"


def default_tol() -> float:
    """Componentwise comparison tolerance, overridable via ``TWISTOR_GA_TOL``."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_ENV_VAR} must be a positive number, got {raw!r}") from None
    if not value > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
    return value
