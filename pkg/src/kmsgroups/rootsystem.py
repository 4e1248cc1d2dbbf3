"""Generalised Cartan matrices, sphericity, rank-2 root data and real roots.

Indices are 0-based internally; everything printed for users is 1-based.
Multidegrees are tuples of ints, one coordinate per simple root.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

INF = math.inf

MultiDegree = tuple  # tuple[int, ...]


class GCMError(ValueError):
    pass


@dataclass(frozen=True)
class GCM:
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def submatrix(self, J) -> GCM:
        J = list(J)
        return GCM(tuple(tuple(self.matrix[i][j] for j in J) for i in J))

    def simple_root(self, i: int) -> MultiDegree:
        return tuple(int(k == i) for k in range(self.rank))

    def to_json(self) -> str:
        return json.dumps({"matrix": [list(r) for r in self.matrix]})


def validate_gcm(rows) -> GCM:
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise GCMError("matrix must be square and non-empty")
    for i in range(n):
        for j in range(n):
            v = rows[i][j]
            if not isinstance(v, int) or isinstance(v, bool):
                raise GCMError(f"entry ({i+1},{j+1}) is not an integer")
            if i == j and v != 2:
                raise GCMError(f"diagonal entry ({i+1},{i+1}) is {v}, expected 2")
            if i != j and v > 0:
                raise GCMError(f"off-diagonal entry ({i+1},{j+1}) is positive")
            if i != j and (v == 0) != (rows[j][i] == 0):
                raise GCMError(f"zero pattern not symmetric at ({i+1},{j+1})")
    return GCM(tuple(tuple(r) for r in rows))


def load_gcm(path) -> GCM:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "matrix" not in data:
        raise GCMError('GCM file must be a JSON object with a "matrix" key')
    return validate_gcm(data["matrix"])


def cartan(name: str) -> GCM:
    """A few named matrices used throughout: A1xA1, A2, B2, G2, A3, A2~ (``A2t``), A3~ (``A3t``)."""
    table = {
        "A1xA1": [[2, 0], [0, 2]],
        "A2": [[2, -1], [-1, 2]],
        "B2": [[2, -2], [-1, 2]],
        "G2": [[2, -1], [-3, 2]],
        "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        "A2t": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
        "A3t": [[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]],
    }
    return validate_gcm(table[name])


def determinant(rows) -> int:
    """Exact determinant by fraction elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    assert det.denominator == 1
    return int(det)


def is_spherical(A: GCM) -> bool:
    # finite type <=> every principal minor is positive
    n = A.rank
    for k in range(1, n + 1):
        for J in combinations(range(n), k):
            if determinant(A.submatrix(J).matrix) <= 0:
                return False
    return True


def is_r_spherical(A: GCM, r: int) -> bool:
    if r < 2:
        raise ValueError("r must be at least 2")
    n = A.rank
    return all(
        is_spherical(A.submatrix(J)) for k in range(1, min(r, n) + 1) for J in combinations(range(n), k)
    )


def m_ij(A: GCM, i: int, j: int):
    """Order of s_i s_j: 2, 3, 4, 6 or ``math.inf``."""
    if i == j:
        raise ValueError("m_ij needs i != j")
    p = A[i, j] * A[j, i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, INF)


# ---------------------------------------------------------------------------
# rank 2

RANK2_TAGS = ("A1xA1", "A2", "B2", "G2")

# local roots r*alpha + s*beta as (r, s), alpha short
_RANK2_ROOTS = {
    "A1xA1": ((1, 0), (0, 1)),
    "A2": ((1, 0), (0, 1), (1, 1)),
    "B2": ((1, 0), (0, 1), (1, 1), (2, 1)),
    "G2": ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
}


@dataclass(frozen=True)
class Rank2Type:
    tag: str

    def __post_init__(self):
        if self.tag not in RANK2_TAGS:
            raise ValueError(f"unknown or non-spherical rank-2 type {self.tag!r}")

    @property
    def m(self) -> int:
        return {"A1xA1": 2, "A2": 3, "B2": 4, "G2": 6}[self.tag]

    @property
    def nroots(self) -> int:
        return len(_RANK2_ROOTS[self.tag])

    def __str__(self):
        return self.tag


def rank2_type(a_ij: int, a_ji: int) -> Rank2Type:
    p = a_ij * a_ji
    if p > 3:
        raise ValueError(f"(a_ij, a_ji) = ({a_ij}, {a_ji}) is not spherical")
    return Rank2Type(RANK2_TAGS[p])


def rank2_roles(A: GCM, i: int, j: int) -> tuple[Rank2Type, int, int]:
    """Type of A_{ij} and the global indices playing the roles of alpha (short) and beta.

    For simply laced pairs alpha is the smaller index.  Otherwise alpha is the
    index k with |a_kl| > |a_lk|, i.e. the short simple root.
    """
    t = rank2_type(A[i, j], A[j, i])
    lo, hi = min(i, j), max(i, j)
    if abs(A[hi, lo]) > abs(A[lo, hi]):
        return t, hi, lo
    return t, lo, hi


def positive_roots_rank2(t: Rank2Type) -> list[tuple[int, int]]:
    return list(_RANK2_ROOTS[t.tag])


def simple_reflection(A: GCM, i: int, alpha: MultiDegree) -> MultiDegree:
    # s_i(alpha_j) = alpha_j - a_ij alpha_i, extended linearly
    c = sum(alpha[j] * A[i, j] for j in range(A.rank))
    out = list(alpha)
    out[i] -= c
    return tuple(out)


def height(alpha: MultiDegree) -> int:
    return sum(alpha)


def real_roots_up_to_height(A: GCM, H: int) -> set[MultiDegree]:
    """Positive real roots of height <= H by BFS under simple reflections.

    Only positive roots of height <= H are kept as BFS nodes; every positive
    real root other than alpha_i is reached from a lower one, so the truncated
    closure is complete.
    """
    if H < 1:
        raise ValueError("H must be >= 1")
    start = [A.simple_root(i) for i in range(A.rank)]
    seen = set(start)
    queue = deque(start)
    while queue:
        a = queue.popleft()
        for i in range(A.rank):
            b = simple_reflection(A, i, a)
            if min(b) < 0 or height(b) > H or b in seen:
                continue
            seen.add(b)
            queue.append(b)
    return seen


def symmetrizer(A: GCM) -> tuple[Fraction, ...]:
    """Positive eps with eps_i a_ij = eps_j a_ji; raises if A is not symmetrizable."""
    n = A.rank
    eps: list[Fraction | None] = [None] * n
    for s in range(n):
        if eps[s] is not None:
            continue
        eps[s] = Fraction(1)
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i, j] != 0:
                    val = eps[i] * A[i, j] / A[j, i]
                    if eps[j] is None:
                        eps[j] = val
                        stack.append(j)
                    elif eps[j] != val:
                        raise GCMError("matrix is not symmetrizable")
    return tuple(eps)  # type: ignore[arg-type]


def inner_product(A: GCM, eps, a: MultiDegree, b: MultiDegree) -> Fraction:
    """Invariant form with (alpha_i|alpha_j) = eps_i a_ij."""
    n = A.rank
    return sum(
        (eps[i] * A[i, j] * a[i] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]),
        Fraction(0),
    )
