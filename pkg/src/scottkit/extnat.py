"""Natural numbers extended by a single top element ``OMEGA``."""

from __future__ import annotations

import functools
from typing import Union


@functools.total_ordering
class _Omega:
    """The first infinite ordinal, used as a capped cardinality."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("scottkit.OMEGA")

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()

ExtNat = Union[int, _Omega]


def is_extnat(x) -> bool:
    return x is OMEGA or (isinstance(x, int) and not isinstance(x, bool) and x >= 0)


def cap(n: int, threshold: int) -> ExtNat:
    """Collapse counts at or above ``threshold`` to OMEGA."""
    if n >= threshold:
        return OMEGA
    return n


def to_json(x: ExtNat):
    return "omega" if x is OMEGA else x


def from_json(x) -> ExtNat:
    if x == "omega":
        return OMEGA
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"not an extended natural: {x!r}")
    return x
