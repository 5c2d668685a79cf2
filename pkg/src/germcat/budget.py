"""Wall-clock budget for exhaustive searches.

The CLI arms a global deadline from GERMCAT_MAX_MILLIS; long-running
enumeration loops poll ``check()`` and abort with BudgetExceeded once the
deadline passes. With no deadline armed, ``check()`` is a no-op.
"""

from __future__ import annotations

import time


class BudgetExceeded(Exception):
    """An exhaustive search ran past the configured time budget."""


_deadline: float | None = None


def set_limit_ms(millis: int | None) -> None:
    """Arm (or clear, with None) a deadline ``millis`` from now."""
    global _deadline
    _deadline = None if millis is None else time.monotonic() + millis / 1000.0


def check() -> None:
    if _deadline is not None and time.monotonic() > _deadline:
        raise BudgetExceeded("search exceeded the configured time budget")
