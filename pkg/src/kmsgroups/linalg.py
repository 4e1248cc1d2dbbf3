"""Sparse exact row echelon form over Q.

Vectors are dicts ``{key: Fraction}`` whose keys are mutually comparable.
Each stored row may carry a *tag*, another sparse vector recording what the
row stands for; reducing a vector accumulates the tags of the rows used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

Vector = dict


def axpy(y: Vector, a, x: Vector) -> None:
    """In place: y += a*x, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scaled(x: Vector, a) -> Vector:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: Vector, y: Vector) -> Vector:
    out = dict(x)
    axpy(out, 1, y)
    return out


class EchelonBasis:
    """Incrementally built echelon basis; each row is monic at its largest key."""

    def __init__(self):
        self.rows: dict[Hashable, tuple[Vector, Vector]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> tuple[Vector, Vector]:
        """Return (residual, tag) with v = residual + (tagged combination of rows)."""
        v = {k: Fraction(c) for k, c in v.items() if c}
        tag: Vector = {}
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v, tag
            k = max(hits)
            c = v[k]
            row, rtag = self.rows[k]
            axpy(v, -c, row)
            axpy(tag, c, rtag)

    def add(self, v: Vector, tag: Vector | None = None) -> bool:
        """Insert v; returns False (and stores nothing) if v is already in the span."""
        res, used = self.reduce(v)
        if not res:
            return False
        full_tag = dict(tag or {})
        axpy(full_tag, -1, used)
        p = max(res)
        inv = 1 / res[p]
        self.rows[p] = (scaled(res, inv), scaled(full_tag, inv))
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[Vector]) -> int:
    E = EchelonBasis()
    for v in vectors:
        E.add(v)
    return E.rank
