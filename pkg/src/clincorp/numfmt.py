"""Numeric display conventions shared by reports and tables.

All published figures round half away from zero (so 18.575 prints as 18.58),
which differs from Python's built-in banker's rounding.  Metrics show three
decimals, percentages two.
"""
from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

METRIC_PLACES = 3
PERCENT_PLACES = 2


def round_half_up(value: float, places: int) -> float:
    """Round half away from zero at `places` decimals."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(str(value)).quantize(q, rounding=ROUND_HALF_UP))


def fmt_metric(value: float) -> str:
    return f"{round_half_up(value, METRIC_PLACES):.{METRIC_PLACES}f}"


def fmt_percent(value: float) -> str:
    return f"{round_half_up(value, PERCENT_PLACES):.{PERCENT_PLACES}f}"
