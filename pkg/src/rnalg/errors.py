"""Error types shared across the package."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 50_000
BUDGET_ENV_VAR = "RN_BUDGET"


class InputError(ValueError):
    """Malformed or dimensionally inconsistent input."""


class BudgetError(RuntimeError):
    """A configured resource cap was exceeded before the computation finished."""


def resolve_budget(budget: int | None = None) -> int:
    """Coordinate/work cap: explicit argument, then RN_BUDGET, then the default."""
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value
