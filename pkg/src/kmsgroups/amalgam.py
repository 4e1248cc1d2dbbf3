"""Free products, amalgamated products along a root subgroup, and the lower central series bounds.

Factor elements are handled through small factor objects (identity, product,
inverse).  Amalgamated products A *_C B use right transversals: every factor
element is split as ``rep * c`` with ``c`` in C, and a reduced word is an
alternating sequence of nontrivial representatives followed by one C-element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .linalg import EchelonBasis
from .rank2 import Rank2Element
from .scalars import QQ


class TransversalError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# factors


@dataclass(frozen=True)
class AdditiveFactor:
    """A copy of (K, +)."""

    name: str
    field: object = QQ

    def identity(self):
        return self.field.zero

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def is_identity(self, a) -> bool:
        return not a

    def coords(self, a) -> list:
        return [str(a)]


@dataclass(frozen=True)
class Rank2Factor:
    """The unipotent group of a spherical rank-2 root system, in collected coordinates."""

    name: str
    tag: str
    field: object = QQ

    def identity(self):
        return Rank2Element.identity(self.tag, self.field)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def is_identity(self, a) -> bool:
        return a.is_identity()

    def coords(self, a) -> list:
        return [str(c) for c in a.coords]


# ---------------------------------------------------------------------------
# reduced words


@dataclass(frozen=True)
class AmalgamWord:
    syllables: tuple  # ((factor id, element), ...), alternating factors
    c_part: object = None  # trailing element of the common subgroup (None for free products)

    def __len__(self):
        return len(self.syllables)

    def is_identity(self, c_is_identity: Callable | None = None) -> bool:
        if self.syllables:
            return False
        if self.c_part is None:
            return True
        return c_is_identity(self.c_part) if c_is_identity else not self.c_part

    def to_json(self, factors: dict) -> str:
        data = [{"factor": f, "coords": factors[f].coords(g)} for f, g in self.syllables]
        out = {"syllables": data}
        if self.c_part is not None:
            out["C"] = str(self.c_part)
        return json.dumps(out)


def free_reduce(letters, factors: dict | None = None) -> AmalgamWord:
    """Reduced form in a free product; ``factors`` maps ids to factor objects (default: additive Q)."""
    stack: list = []
    for fid, g in letters:
        F = factors[fid] if factors else AdditiveFactor(str(fid))
        if F.is_identity(g):
            continue
        if stack and stack[-1][0] == fid:
            h = F.mul(stack[-1][1], g)
            if F.is_identity(h):
                stack.pop()
            else:
                stack[-1] = (fid, h)
        else:
            stack.append((fid, g))
    return AmalgamWord(tuple(stack))


def cyclically_reduce(letters, factors: dict | None = None) -> AmalgamWord:
    """Free-reduce, then conjugate while the first and last syllables share a factor.

    The syllable length of the result is a conjugacy invariant.
    """
    w = list(free_reduce(letters, factors).syllables)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        fid, last = w.pop()
        w = list(free_reduce([(fid, last)] + w, factors).syllables)
    return AmalgamWord(tuple(w))


@dataclass(frozen=True)
class AmalgamSpec:
    """A *_C B.  ``split[f](g)`` returns (rep, c); ``embed_c[f](c)`` maps C into factor f."""

    factors: dict
    c_factor: object
    split: dict = field(repr=False)
    embed_c: dict = field(repr=False)

    def check_transversal(self, f, g) -> tuple:
        F = self.factors[f]
        rep, c = self.split[f](g)
        if F.mul(rep, self.embed_c[f](c)) != g:
            raise TransversalError(f"transversal does not recombine for {g} in factor {f}")
        return rep, c


def amalgam_reduce(spec: AmalgamSpec, letters) -> AmalgamWord:
    """Left-to-right reduction to rep_1 ... rep_m * c with alternating nontrivial representatives."""
    C = spec.c_factor
    reps: list = []
    c = C.identity()
    for fid, g in letters:
        F = spec.factors[fid]
        h = F.mul(spec.embed_c[fid](c), g)
        if reps and reps[-1][0] == fid:
            h = F.mul(reps.pop()[1], h)
        rep, c = spec.check_transversal(fid, h)
        if not F.is_identity(rep):
            reps.append((fid, rep))
        # a trivial rep leaves c to be absorbed by the next letter; the new top
        # (if any) belongs to the other factor, so the word stays alternating
    return AmalgamWord(tuple(reps), c)


def expand(spec: AmalgamSpec, w: AmalgamWord) -> list:
    """Letters of a reduced word, the C-part written in the first factor."""
    out = list(w.syllables)
    if w.c_part is not None and not spec.c_factor.is_identity(w.c_part):
        f0 = next(iter(spec.factors))
        out.append((f0, spec.embed_c[f0](w.c_part)))
    return out


# ---------------------------------------------------------------------------
# rank-2 transversals and the edge amalgam of A2~


def rank2_transversal(tag: str, c_root, field=QQ):
    """Split g = rep * x_c(b) where b is the c_root coordinate of g (a homomorphism to K)."""
    if tuple(c_root) not in ((1, 0), (0, 1)):
        raise TransversalError("the common subgroup must be a simple root group")
    c_root = tuple(c_root)

    def split(g: Rank2Element):
        b = g.coord(c_root)
        return g.times_letter(c_root, -b), b

    def embed(b) -> Rank2Element:
        return Rank2Element.identity(tag, field).times_letter(c_root, b)

    return split, embed


def heisenberg_transversal(c_root=(0, 1), field=QQ):
    return rank2_transversal("A2", c_root, field)


def a2tilde_edge_amalgam(field=QQ) -> AmalgamSpec:
    """U_12 *_{U_2} U_23: x_2 is beta in the first factor and alpha in the second."""
    left = Rank2Factor("U12", "A2", field)
    right = Rank2Factor("U23", "A2", field)
    sl, el = rank2_transversal("A2", (0, 1), field)
    sr, er = rank2_transversal("A2", (1, 0), field)
    return AmalgamSpec(
        factors={"U12": left, "U23": right},
        c_factor=AdditiveFactor("U2", field),
        split={"U12": sl, "U23": sr},
        embed_c={"U12": el, "U23": er},
    )


_EDGE_INDICES = {"U12": (0, 1), "U23": (1, 2)}


def edge_letters_to_word(letters, A, field=QQ):
    """A GroupWord over A2~ for amalgam letters of :func:`a2tilde_edge_amalgam`."""
    from .words import GroupWord

    out = []
    for fid, g in letters:
        i, j = _EDGE_INDICES[fid]
        for (r, s), c in g.letters():
            gamma = [0, 0, 0]
            gamma[i] += r
            gamma[j] += s
            out.append((tuple(gamma), c))
    return GroupWord(A, tuple(out), field)


# ---------------------------------------------------------------------------
# lower central series bounds


def r_n_bound(N: int, n: int) -> int:
    if N < 2 or n < 1:
        raise ValueError("need N >= 2 and n >= 1")
    return 1 + n + (N - 1) * n * (n + 1) // 2


@dataclass
class LieModel:
    """A finite-dimensional Lie algebra h with an abelian space of derivations c.

    ``basis`` lists spanning vectors of h (sparse dicts); ``bracket`` is bilinear
    on sparse vectors; each derivation is a linear map on sparse vectors.
    """

    basis: list
    bracket: Callable
    derivations: list
    name: str = ""


def _span(vectors) -> EchelonBasis:
    E = EchelonBasis()
    for v in vectors:
        E.add(v)
    return E


def _vectors(E: EchelonBasis) -> list:
    return [row for row, _ in E.rows.values()]


def _bracket_space(M: LieModel, U: list, V: list) -> list:
    return _vectors(_span(M.bracket(u, v) for u in U for v in V))


def _act(M: LieModel, V: list) -> list:
    return _vectors(_span(D(v) for D in M.derivations for v in V))


def _iterate_act(M: LieModel, V: list, m: int) -> list:
    for _ in range(m):
        if not V:
            break
        V = _act(M, V)
    return V


def _contained(U: list, V: list) -> bool:
    E = _span(V)
    return all(E.contains(u) for u in U)


def check_derivations(M: LieModel) -> None:
    for D in M.derivations:
        for x, y in product(M.basis, repeat=2):
            lhs = D(M.bracket(x, y))
            rhs = dict(M.bracket(D(x), y))
            for k, c in M.bracket(x, D(y)).items():
                rhs[k] = rhs.get(k, 0) + c
            rhs = {k: c for k, c in rhs.items() if c}
            if lhs != rhs:
                raise PreconditionError(f"{M.name}: a map is not a derivation")
    for D1, D2 in product(M.derivations, repeat=2):
        for x in M.basis:
            a, b = D1(D2(x)), D2(D1(x))
            if a != b:
                raise PreconditionError(f"{M.name}: derivations do not commute")


def lower_central_series(M: LieModel, n_max: int) -> list:
    """[gamma_1, ..., gamma_{n_max}] as lists of spanning vectors."""
    out = [_vectors(_span(M.basis))]
    while len(out) < n_max:
        out.append(_bracket_space(M, out[0], out[-1]))
    return out


def verify_lcs_bound_lie(M: LieModel, N: int, n_max: int) -> bool:
    """Lie analogues of the two lower-central-series lemmas, by exact span computations.

    Checks, for n <= n_max:  c^(Nn-n+1)(gamma_n h) in gamma_{n+1} h, and
    L_{r_n} in gamma_{n+1} h where L_1 = h, L_2 = [c,h] + [h,h] and
    L_m = [c, L_{m-1}] + [h, L_{m-1}].
    """
    if N < 2:
        raise PreconditionError("the bound needs N >= 2")
    check_derivations(M)
    gam = lower_central_series(M, n_max + 1)
    h = gam[0]
    if not _contained(_iterate_act(M, h, N), gam[1] if len(gam) > 1 else []):
        raise PreconditionError(f"{M.name}: c^(N)(h) is not contained in [h,h]")
    for n in range(1, n_max + 1):
        if not _contained(_iterate_act(M, gam[n - 1], N * n - n + 1), gam[n]):
            return False
    r_max = r_n_bound(N, n_max)
    L = {1: h}
    for m in range(2, r_max + 1):
        prev = L[m - 1]
        L[m] = _vectors(_span(_act(M, prev) + _bracket_space(M, h, prev)))
    for n in range(1, n_max + 1):
        if not _contained(L[r_n_bound(N, n)], gam[n]):
            return False
    return True


# -- model builders ----------------------------------------------------------


def derivation_from_generators(L, images: dict) -> Callable:
    """Extend generator images to a derivation of L via the basis definitions x = [u, v]."""
    from .linalg import axpy

    cache: dict = {}

    def on_basis(k: int) -> dict:
        if k not in cache:
            b = L.basis[k]
            if b.definition is None:
                cache[k] = {i: Fraction(c) for i, c in images.get(k, {}).items() if c}
            else:
                u, v = b.definition
                out: dict = {}
                axpy(out, 1, L.br(on_basis(u), {v: Fraction(1)}))
                axpy(out, 1, L.br({u: Fraction(1)}, on_basis(v)))
                cache[k] = out
        return cache[k]

    def D(x: dict) -> dict:
        out: dict = {}
        for k, c in x.items():
            axpy(out, c, on_basis(k))
        return out

    return D


def ideal_model(L, indices, outer, name="") -> LieModel:
    """h = span of basis elements ``indices`` (an ideal of L) with derivations ad(outer[k])."""
    idx = set(indices)

    def restrict(v):
        bad = [k for k in v if k not in idx]
        if bad:
            raise PreconditionError(f"{name}: span is not an ideal")
        return v

    ders = [(lambda v, y=y: restrict(L.br(y, v))) for y in outer]
    return LieModel([{k: Fraction(1)} for k in sorted(idx)], lambda u, v: restrict(L.br(u, v)), ders, name)


def standard_models() -> list[tuple[LieModel, int]]:
    """(model, N) pairs used by the acceptance suite."""
    from .lie import free_lie, serre_quotient
    from .rootsystem import validate_gcm

    models = []

    F = free_lie(2, 3)
    D = derivation_from_generators(F, {0: {1: 1}})
    models.append((LieModel([{k: Fraction(1)} for k in range(F.dim)], F.br, [D], "free nilpotent (2,3)"), 2))

    def shift(v):
        return {k + 1: c for k, c in v.items() if k + 1 < 3}

    models.append((LieModel([{k: Fraction(1)} for k in range(3)], lambda u, v: {}, [shift], "abelian Q^3"), 3))

    B2 = serre_quotient(validate_gcm([[2, -2], [-1, 2]]), 4)
    ideal = [k for k in range(B2.dim) if B2.basis[k].degree != (1, 0)]
    models.append((ideal_model(B2, ideal, [B2.generator(0)], "B2 ideal"), 3))

    G2 = serre_quotient(validate_gcm([[2, -3], [-1, 2]]), 6)
    ideal = [k for k in range(G2.dim) if G2.basis[k].degree != (1, 0)]
    models.append((ideal_model(G2, ideal, [G2.generator(0)], "G2 ideal"), 4))
    return models
