"""Enumeration caps, overridable through ``MODCAT_*`` environment variables."""

from __future__ import annotations

import os

from .errors import TooLarge

DEFAULTS = {
    "MODCAT_MAX_ORDER": 10**6,
    "MODCAT_MAX_SUBGROUP_ORDER": 2**12,
    "MODCAT_MAX_RANK": 64,
    "MODCAT_MAX_POWER": 4096,
}


def limit(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return DEFAULTS[name]
    return int(raw)


def check(name: str, value: int) -> None:
    lim = limit(name)
    if value > lim:
        raise TooLarge(name, value, lim)
