"""Work-budget knobs.

The environment variable ``CURVCX_BUDGET`` caps the size of open-ended
computations (generator growth, subset scans, geodesic enumeration).
Operations also accept explicit ``budget=`` overrides; the env var is the
session-wide default.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 1_000_000

#: default cap on the matrix dimension handed to the dense eigensolver
DEFAULT_SPECTRUM_CAP = 4000


def budget(override: int | None = None) -> int:
    """Return the effective work budget.

    ``override`` wins when given; otherwise ``CURVCX_BUDGET`` from the
    environment; otherwise :data:`DEFAULT_BUDGET`.
    """
    if override is not None:
        if override <= 0:
            raise ValueError("budget must be positive")
        return override
    raw = os.environ.get("CURVCX_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"CURVCX_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"CURVCX_BUDGET must be positive, got {value}")
    return value
