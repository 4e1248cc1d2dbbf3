"""Finite-dimensional truncations of graded Lie algebras generated in degree one.

Two constructions are provided.

* :func:`free_lie` uses the Lyndon basis with its standard bracketing; brackets
  are computed in the tensor algebra and decomposed triangularly.
* :func:`quotient_by_relators` (and :func:`serre_quotient` on top of it) builds
  the algebra one multidegree at a time.  The degree-``a`` space is spanned by
  formal brackets {x, y} of lower basis elements, modulo the Jacobi identity
  on every triple and the relators of degree ``a``.  Basis elements are
  left-normed brackets [e_i1, [e_i2, [..., e_in]]] picked greedily in
  lexicographic order of (i1, ..., in).

Vectors are sparse dicts {basis index: Fraction}.  Generator e_i always has
index i.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import factorial, gcd

from .linalg import EchelonBasis, axpy, scaled
from .rootsystem import GCM, symmetrizer


class RelatorError(ValueError):
    pass


@dataclass(frozen=True)
class BasisElement:
    index: int
    degree: tuple
    word: tuple  # left-normed word, or Lyndon word for free_lie
    definition: tuple | None  # (left, right) basis indices with this = [left, right]
    label: str

    @property
    def height(self) -> int:
        return sum(self.degree)


def left_normed_label(word) -> str:
    s = str(word[-1] + 1)
    for i in reversed(word[:-1]):
        s = f"[{i + 1},{s}]"
    return s


def multidegrees(rank: int, h: int):
    """All nonnegative integer vectors of length ``rank`` summing to h."""
    if rank == 1:
        yield (h,)
        return
    for first in range(h, -1, -1):
        for rest in multidegrees(rank - 1, h - first):
            yield (first,) + rest


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _nonneg(a):
    return all(x >= 0 for x in a)


class GradedLieAlgebra:
    """A graded Lie algebra truncated above height N, with explicit structure constants."""

    def __init__(
        self, rank: int, N: int, basis: list[BasisElement], table: dict, name: str = "", left_normed: bool = False
    ):
        self.rank = rank
        self.left_normed = left_normed  # basis words are right-nested brackets of generators
        self.N = N
        self.basis = basis
        self._table = table  # (i, j) with i < j -> vector
        self.name = name
        self.by_degree: dict[tuple, list[int]] = {}
        for b in basis:
            self.by_degree.setdefault(b.degree, []).append(b.index)

    # -- shape -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    def dim_at(self, degree) -> int:
        return len(self.by_degree.get(tuple(degree), ()))

    def dims_by_height(self) -> list[int]:
        out = [0] * self.N
        for b in self.basis:
            out[b.height - 1] += 1
        return out

    def nilpotency_class(self) -> int:
        return max((b.height for b in self.basis), default=0)

    def degree_of(self, v: dict):
        """The common multidegree of a nonzero homogeneous vector (None for zero)."""
        degs = {self.basis[k].degree for k in v}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return next(iter(degs), None)

    # -- brackets ----------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        return scaled(self._table.get((j, i), {}), -1)

    def bracket_vec(self, u: dict, v: dict) -> tuple[dict, bool]:
        """Bilinear bracket of sparse vectors; also reports whether anything was cut off above N."""
        out: dict = {}
        truncated = False
        for i, a in u.items():
            hi = self.basis[i].height
            for j, b in v.items():
                if hi + self.basis[j].height > self.N:
                    truncated = True
                    continue
                axpy(out, a * b, self.bracket_basis(i, j))
        return out, truncated

    def br(self, u: dict, v: dict) -> dict:
        return self.bracket_vec(u, v)[0]

    def generator(self, i: int) -> dict:
        return {i: Fraction(1)}

    def evaluate_word(self, word) -> dict:
        """[e_i1, [e_i2, [..., e_in]]] as a vector (zero if truncated)."""
        v = self.generator(word[-1])
        for i in reversed(word[:-1]):
            v = self.br(self.generator(i), v)
        return v

    def element(self, v: dict) -> LieElement:
        return LieElement(self, {k: Fraction(c) for k, c in v.items() if c})

    def e(self, i: int) -> LieElement:
        return self.element(self.generator(i))

    # -- checks ------------------------------------------------------------
    def check_jacobi(self, max_height: int | None = None) -> bool:
        H = min(self.N, max_height or self.N)
        B = self.basis
        for x in B:
            for y in B:
                if y.index <= x.index or x.height + y.height >= H:
                    continue
                for z in B:
                    if z.index <= y.index or x.height + y.height + z.height > H:
                        continue
                    X, Y, Z = ({b.index: Fraction(1)} for b in (x, y, z))
                    s = self.br(X, self.br(Y, Z))
                    axpy(s, 1, self.br(Y, self.br(Z, X)))
                    axpy(s, 1, self.br(Z, self.br(X, Y)))
                    if s:
                        return False
        return True

    def check_antisymmetry(self) -> bool:
        return all(not self.bracket_basis(i, i) for i in range(self.dim))

    # -- output ------------------------------------------------------------
    def dims_tsv(self) -> str:
        buf = io.StringIO()
        buf.write("multidegree\theight\tdim\n")
        degs = sorted(self.by_degree, key=lambda d: (sum(d), tuple(-x for x in d)))
        for d in degs:
            buf.write(f"{','.join(map(str, d))}\t{sum(d)}\t{len(self.by_degree[d])}\n")
        return buf.getvalue()

    def __repr__(self):
        return f"GradedLieAlgebra({self.name or 'rank ' + str(self.rank)}, N={self.N}, dim={self.dim})"


@dataclass(frozen=True)
class LieElement:
    algebra: GradedLieAlgebra = field(repr=False, compare=False)
    coeffs: dict
    truncated: bool = False

    def __add__(self, other: LieElement) -> LieElement:
        v = dict(self.coeffs)
        axpy(v, 1, other.coeffs)
        return LieElement(self.algebra, v)

    def __sub__(self, other: LieElement) -> LieElement:
        v = dict(self.coeffs)
        axpy(v, -1, other.coeffs)
        return LieElement(self.algebra, v)

    def __rmul__(self, c) -> LieElement:
        return LieElement(self.algebra, scaled(self.coeffs, Fraction(c)))

    def __neg__(self):
        return (-1) * self

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = [f"{c}*{self.algebra.basis[k].label}" for k, c in sorted(self.coeffs.items())]
        return " + ".join(terms)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    if x.algebra is not y.algebra:
        raise ValueError("elements of different algebras")
    v, cut = x.algebra.bracket_vec(x.coeffs, y.coeffs)
    return LieElement(x.algebra, v, cut)


# ---------------------------------------------------------------------------
# free Lie algebra via Lyndon words


def lyndon_words(n: int, max_len: int) -> list[tuple]:
    """Lyndon words over {0..n-1} of length <= max_len (Duval's generator)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


def is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else len(w) == 1


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("single letters have no standard factorization")


def _tensor_bracket(p: dict, q: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            axpy(out, a * b, {u + v: 1})
            axpy(out, -a * b, {v + u: 1})
    return out


def free_lie(n: int, N: int) -> GradedLieAlgebra:
    if N < 1:
        raise ValueError("N must be >= 1")
    words = sorted(lyndon_words(n, N), key=lambda w: (len(w), w))
    index = {w: k for k, w in enumerate(words)}
    expansion: dict[tuple, dict] = {}
    basis = []
    for k, w in enumerate(words):
        deg = tuple(w.count(i) for i in range(n))
        if len(w) == 1:
            expansion[w] = {w: Fraction(1)}
            basis.append(BasisElement(k, deg, w, None, str(w[0] + 1)))
            continue
        u, v = standard_factorization(w)
        expansion[w] = _tensor_bracket(expansion[u], expansion[v])
        lab = f"[{basis[index[u]].label},{basis[index[v]].label}]"
        basis.append(BasisElement(k, deg, w, (index[u], index[v]), lab))

    def decompose(p: dict) -> dict:
        p = dict(p)
        out: dict = {}
        while p:
            w = min(p)
            c = p[w]
            if w not in index:
                raise AssertionError(f"non-Lyndon leading word {w}")
            out[index[w]] = c
            axpy(p, -c, expansion[w])
        return out

    table = {}
    for i, wi in enumerate(words):
        for j in range(i + 1, len(words)):
            wj = words[j]
            if len(wi) + len(wj) > N:
                continue
            table[(i, j)] = decompose(_tensor_bracket(expansion[wi], expansion[wj]))
    return GradedLieAlgebra(n, N, basis, table, name=f"free({n})")


def witt_dimension(degree) -> int:
    """Number of Lyndon words with the given letter content (necklace formula)."""

    def mobius(k):
        res, p, m = 1, 2, k
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    def multinom(d):
        num = factorial(sum(d))
        for x in d:
            num //= factorial(x)
        return num

    n = sum(degree)
    g = reduce(gcd, degree)
    total = 0
    for k in range(1, g + 1):
        if g % k == 0:
            total += mobius(k) * multinom([x // k for x in degree])
    return total // n


# ---------------------------------------------------------------------------
# quotients built degree by degree


def _normalize_relator(rel, rank):
    """Relators are a word (tuple of generator indices) or a list of (coeff, word)."""
    if rel and isinstance(rel[0], int):
        terms = [(Fraction(1), tuple(rel))]
    else:
        terms = [(Fraction(c), tuple(w)) for c, w in rel]
    degs = set()
    for _, w in terms:
        if not w or any(not (0 <= i < rank) for i in w):
            raise RelatorError(f"bad relator word {w}")
        degs.add(tuple(w.count(i) for i in range(rank)))
    if len(degs) != 1:
        raise RelatorError("relator is not multihomogeneous")
    return degs.pop(), terms


def quotient_by_relators(rank: int, relators, N: int, name: str = "") -> GradedLieAlgebra:
    if N < 1:
        raise ValueError("N must be >= 1")
    rels_by_deg: dict[tuple, list] = {}
    for r in relators:
        d, terms = _normalize_relator(r, rank)
        if sum(d) == 1:
            raise RelatorError("relators of height 1 would kill a generator")
        if sum(d) <= N:
            rels_by_deg.setdefault(d, []).append(terms)

    basis: list[BasisElement] = []
    table: dict = {}
    for i in range(rank):
        d = tuple(int(k == i) for k in range(rank))
        basis.append(BasisElement(i, d, (i,), None, str(i + 1)))
    by_degree: dict[tuple, list[int]] = {b.degree: [b.index] for b in basis}

    def br(i, j):
        if i == j:
            return {}
        if i < j:
            return table.get((i, j), {})
        return scaled(table.get((j, i), {}), -1)

    def br_vec(u, v):
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                axpy(out, a * b, br(i, j))
        return out

    def sym(i, j):
        """Formal symbol for [b_i, b_j] in the degree under construction."""
        if i == j:
            return {}
        return {(i, j): Fraction(1)} if i < j else {(j, i): Fraction(-1)}

    def sym_vec(i, v):
        out: dict = {}
        for j, c in v.items():
            axpy(out, c, sym(i, j))
        return out

    def lower_word(word):
        v = {word[-1]: Fraction(1)}
        for i in reversed(word[1:-1]):
            v = br_vec({i: Fraction(1)}, v)
        return v

    for h in range(2, N + 1):
        new_elems = []  # (word, degree, definition, {sym: coeffs} for every pair)
        for alpha in multidegrees(rank, h):
            lower = [b for b in basis if _nonneg(_sub(alpha, b.degree)) and b.degree != alpha]
            pairs = []
            for x in lower:
                rest = _sub(alpha, x.degree)
                for y in by_degree.get(rest, ()):
                    if y > x.index:
                        pairs.append((x.index, y))
            if not pairs:
                continue
            E = EchelonBasis()
            # Jacobi on distinct triples x < y < z
            for x in lower:
                for y in lower:
                    if y.index <= x.index:
                        continue
                    rest = _sub(_sub(alpha, x.degree), y.degree)
                    if not _nonneg(rest) or sum(rest) == 0:
                        continue
                    for z in by_degree.get(rest, ()):
                        if z <= y.index:
                            continue
                        xi, yi = x.index, y.index
                        rel = sym_vec(xi, br(yi, z))
                        axpy(rel, 1, sym_vec(yi, br(z, xi)))
                        axpy(rel, 1, sym_vec(z, br(xi, yi)))
                        if rel:
                            E.add(rel)
            for terms in rels_by_deg.get(alpha, ()):
                rel: dict = {}
                for c, w in terms:
                    axpy(rel, c, sym_vec(w[0], lower_word(w)))
                if rel:
                    E.add(rel)
            cands = []
            for i in range(rank):
                rest = _sub(alpha, basis[i].degree)
                if _nonneg(rest):
                    for b in by_degree.get(rest, ()):
                        cands.append(((i,) + basis[b].word, i, b))
            cands.sort()
            kept = []
            for word, i, b in cands:
                if E.add(sym(i, b), {word: Fraction(1)}):
                    kept.append((word, (i, b)))
            if not kept:
                continue
            consts = {}
            for i, j in pairs:
                res, tag = E.reduce(sym(i, j))
                assert not res, "formal brackets must reduce to the chosen basis"
                consts[(i, j)] = tag
            new_elems.append((alpha, kept, consts))

        order = sorted((word, alpha, defn) for alpha, kept, _ in new_elems for word, defn in kept)
        idx = {}
        for word, alpha, defn in order:
            k = len(basis)
            idx[word] = k
            basis.append(BasisElement(k, alpha, word, defn, left_normed_label(word)))
            by_degree.setdefault(alpha, []).append(k)
        for _, _, consts in new_elems:
            for pair, tag in consts.items():
                v = {idx[w]: c for w, c in tag.items() if c}
                if v:
                    table[pair] = v
    return GradedLieAlgebra(rank, N, basis, table, name=name or f"quotient({rank})", left_normed=True)


def serre_relators(A: GCM) -> list[tuple]:
    rels = []
    for i in range(A.rank):
        for j in range(A.rank):
            if i != j:
                rels.append((i,) * (1 - A[i, j]) + (j,))
    return rels


@lru_cache(maxsize=32)
def _serre_cached(matrix, N):
    A = GCM(matrix)
    return quotient_by_relators(A.rank, serre_relators(A), N, name="serre")


def serre_quotient(A: GCM, N: int) -> GradedLieAlgebra:
    """Positive part of the Kac-Moody algebra of A, truncated above height N (memoized)."""
    return _serre_cached(A.matrix, N)


def root_multiplicity(A: GCM, alpha, N: int | None = None) -> int:
    alpha = tuple(alpha)
    L = serre_quotient(A, N or max(sum(alpha), 1))
    return L.dim_at(alpha)


# ---------------------------------------------------------------------------
# independent cross-check


def peterson_multiplicity_oracle(A: GCM, alpha) -> int:
    """Multiplicity of alpha from the recursion on c_b = sum_k mult(b/k)/k.

    Uses (b | b - 2 rho) c_b = sum over b' + b'' = b of (b'|b'') c_b' c_b''
    with the invariant form (alpha_i|alpha_j) = eps_i a_ij.  Independent of
    the Lie algebra construction; intended as a cross-check.
    """
    alpha = tuple(alpha)
    if len(alpha) != A.rank or any(x < 0 for x in alpha) or not any(alpha):
        raise ValueError("alpha must be a nonzero element of the positive cone")
    return int(_peterson(A.matrix)(alpha))


@lru_cache(maxsize=16)
def _peterson(matrix):
    A = GCM(matrix)
    eps = symmetrizer(A)
    n = A.rank
    simple = {_unit(n, i) for i in range(n)}
    # form on Q, stored as a matrix: (a|b) = sum a_i b_j eps_i a_ij
    form = [[eps[i] * A[i, j] for j in range(n)] for i in range(n)]

    def ip(a, b):
        return sum((form[i][j] * a[i] * b[j] for i in range(n) if a[i] for j in range(n) if b[j]), Fraction(0))

    @lru_cache(maxsize=None)
    def c(beta):
        if beta in simple:
            return Fraction(1)
        norm = ip(beta, beta) - sum(beta[i] * form[i][i] for i in range(n))
        if norm == 0:
            # (b|b) = 2(rho|b) never holds for a root of height >= 2, so mult(b) = 0
            return sum((mult(tuple(x // k for x in beta)) / k for k in _divisors(beta)), Fraction(0))
        total = Fraction(0)
        for b1 in product(*(range(x + 1) for x in beta)):
            if not any(b1) or b1 == beta:
                continue
            total += ip(b1, _sub(beta, b1)) * c(b1) * c(_sub(beta, b1))
        return total / norm

    @lru_cache(maxsize=None)
    def mult(beta):
        val = c(beta)
        for k in _divisors(beta):
            val -= mult(tuple(x // k for x in beta)) / k
        assert val.denominator == 1
        return val

    return mult


def _unit(n, i):
    return tuple(int(k == i) for k in range(n))


def _divisors(beta):
    """Common divisors k >= 2 of the coordinates of beta."""
    g = reduce(gcd, beta)
    return [k for k in range(2, g + 1) if g % k == 0]
