"""Enumeration caps, overridable through the ``INDEPBOUND_CAPS`` variable.

The variable holds comma-separated ``name=value`` pairs, for example
``INDEPBOUND_CAPS="max_n=36,max_td=12"``.
"""

from __future__ import annotations

import os

from .errors import InputError

DEFAULT_CAPS = {
    "max_n": 30,  # exact alpha / independent-set enumeration
    "max_td": 11,  # star enumeration: t*d + 1 <= max_td
    "max_clique": 6,  # largest r for K_r-freeness checks
    "max_vertices": 1_000_000,  # generated constructions
    "max_edges": 2_000_000,
}


def load_caps(env: str | None = None) -> dict[str, int]:
    caps = dict(DEFAULT_CAPS)
    raw = os.environ.get("INDEPBOUND_CAPS", "") if env is None else env
    for item in filter(None, (p.strip() for p in raw.split(","))):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in caps:
            raise InputError(f"bad INDEPBOUND_CAPS entry {item!r}")
        try:
            caps[name] = int(value)
        except ValueError:
            raise InputError(f"bad INDEPBOUND_CAPS value {item!r}") from None
        if caps[name] < 0:
            raise InputError(f"negative INDEPBOUND_CAPS value {item!r}")
    return caps


def cap(name: str) -> int:
    return load_caps()[name]
