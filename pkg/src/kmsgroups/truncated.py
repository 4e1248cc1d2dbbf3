"""The completed unipotent group modulo elements of height > N.

Group elements are stored by their logarithm, a vector of the truncated Lie
algebra ``L``.  Products use the Baker-Campbell-Hausdorff series, generated
by the recursion

    Z(t) = log(exp X exp tY),   Z'(t) = sum_m b_m ad_Z^m (Y),

with x / (1 - e^{-x}) = sum_m b_m x^m.  Expanding Z = sum_k t^k Z_k gives
(k+1) Z_{k+1} = sum_m b_m [t^k] ad_Z^m Y, and every term of t-degree k has
height at least k, so the recursion stops after N steps.

:class:`Envelope` does PBW arithmetic in the truncated enveloping algebra; it
is the reference model that the exponential coordinates are tested against.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lie import GradedLieAlgebra, serre_quotient
from .linalg import EchelonBasis, axpy, scaled
from .rank2 import SWAP_RULES
from .rootsystem import GCM, rank2_roles


class CalibrationError(RuntimeError):
    pass


class NotGrouplikeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# series coefficients


@lru_cache(maxsize=None)
def _bch_coefficients(n: int) -> tuple[Fraction, ...]:
    """Coefficients of x / (1 - e^{-x}) up to x^n."""
    # (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    d = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(1)]
    for k in range(1, n + 1):
        inv.append(-sum(d[j] * inv[k - j] for j in range(1, k + 1)))
    return tuple(inv)


def bch(L: GradedLieAlgebra, X: dict, Y: dict) -> dict:
    """log(exp X exp Y) in L, exact up to height N."""
    if not X:
        return dict(Y)
    if not Y:
        return dict(X)
    N = L.N
    b = _bch_coefficients(N)
    Z = [X]
    A: dict[tuple[int, int], dict] = {(0, 0): Y}
    total = dict(X)
    for k in range(N):
        acc: dict = dict(Y) if k == 0 else {}
        for m in range(1, N):
            row: dict = {}
            for j in range(k + 1):
                a = A.get((m - 1, k - j))
                if a and Z[j]:
                    axpy(row, 1, L.br(Z[j], a))
            if not row:
                continue
            A[(m, k)] = row
            axpy(acc, b[m], row)
        z = scaled(acc, Fraction(1, k + 1))
        Z.append(z)
        axpy(total, 1, z)
    return total


def ad_exp(L: GradedLieAlgebra, w: dict, v: dict, sign: int = 1) -> dict:
    """exp(sign * ad w)(v) = sum_k sign^k ad_w^k(v) / k!."""
    out = dict(v)
    term = dict(v)
    k = 0
    while term:
        k += 1
        term = scaled(L.br(w, term), Fraction(sign, k))
        axpy(out, 1, term)
    return out


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class TruncatedGroupElement:
    group: TruncatedGroup = field(repr=False, compare=False)
    log: dict

    def __mul__(self, other: TruncatedGroupElement) -> TruncatedGroupElement:
        return TruncatedGroupElement(self.group, bch(self.group.L, self.log, other.log))

    def inverse(self) -> TruncatedGroupElement:
        return TruncatedGroupElement(self.group, scaled(self.log, -1))

    def is_identity(self) -> bool:
        return not self.log

    def __eq__(self, other):
        return isinstance(other, TruncatedGroupElement) and self.log == other.log

    def __hash__(self):
        return hash(frozenset(self.log.items()))

    def height_component(self, n: int) -> dict:
        B = self.group.L.basis
        return {k: c for k, c in self.log.items() if B[k].height == n}

    def filtration_height(self) -> int:
        """Least n with a nonzero height-n log component; N+1 for the identity."""
        return self.group.filtration_height(self)

    def leading_term(self) -> tuple[int, dict]:
        n = self.filtration_height()
        return n, self.height_component(n)

    def describe(self) -> str:
        """Says "identity up to height N" rather than "identity": only heights <= N are seen."""
        n = self.filtration_height()
        if n > self.group.N:
            return f"identity up to height {self.group.N}"
        return f"nontrivial, filtration height {n}"


class TruncatedGroup:
    """exp of the Lie algebra L (truncated above height L.N) with exact arithmetic."""

    def __init__(self, L: GradedLieAlgebra, A: GCM | None = None):
        self.L = L
        self.A = A
        self.N = L.N
        self._rank2_vectors: dict = {}
        self._commutator_cache: dict = {}

    # -- constructors ------------------------------------------------------
    def identity(self) -> TruncatedGroupElement:
        return TruncatedGroupElement(self, {})

    def exp(self, x: dict) -> TruncatedGroupElement:
        return TruncatedGroupElement(self, {k: Fraction(c) for k, c in x.items() if c})

    def envelope(self) -> Envelope:
        if "_envelope" not in self.__dict__:
            self._envelope = Envelope(self.L)
        return self._envelope

    def to_env(self, g: TruncatedGroupElement) -> dict:
        return self.envelope().exp(g.log)

    def from_env(self, u: dict) -> TruncatedGroupElement:
        """The group element with PBW expansion u; raises NotGrouplikeError if log u is not a Lie element."""
        E = self.envelope()
        try:
            return self.exp(E.lie_part(E.log(u)))
        except ValueError as exc:
            raise NotGrouplikeError(str(exc)) from None

    def letter(self, i: int, a) -> TruncatedGroupElement:
        return self.exp(scaled(self.L.generator(i), Fraction(a)))

    def root_letter(self, gamma, a) -> TruncatedGroupElement:
        return self.exp(scaled(self.root_vector(gamma), Fraction(a)))

    def commutator(self, g, h) -> TruncatedGroupElement:
        """[g, h] = g^-1 h^-1 g h."""
        return g.inverse() * h.inverse() * g * h

    def commutator_with_letter(self, i: int, a, h: TruncatedGroupElement) -> TruncatedGroupElement:
        """[exp(a e_i), h] = exp(-a e_i) exp(a Ad(h^-1) e_i), one BCH product."""
        e = scaled(self.L.generator(i), Fraction(a))
        if not e or not h.log:
            return self.identity()
        conj = ad_exp(self.L, h.log, e, sign=-1)
        return TruncatedGroupElement(self, bch(self.L, scaled(e, -1), conj))

    # -- rank-2 root vectors -------------------------------------------------
    def root_vector(self, gamma) -> dict:
        gamma = tuple(gamma)
        supp = [k for k, c in enumerate(gamma) if c]
        if len(supp) == 1 and gamma[supp[0]] == 1:
            return self.L.generator(supp[0])
        if len(supp) != 2 or self.A is None:
            raise ValueError(f"{gamma} is not a real root of a rank-2 subsystem")
        i, j = supp
        vecs, roles = self.rank2_vectors(i, j)
        _, a, b = roles
        local = (gamma[a], gamma[b])
        if local not in vecs:
            raise ValueError(f"{gamma} is not a positive root of the subsystem {{{i + 1},{j + 1}}}")
        return vecs[local]

    def rank2_vectors(self, i: int, j: int):
        key = (min(i, j), max(i, j))
        if key not in self._rank2_vectors:
            roles = rank2_roles(self.A, *key)
            self._rank2_vectors[key] = (
                calibrated_root_vectors(self.L, roles[0].tag, roles[1], roles[2]),
                roles,
            )
        return self._rank2_vectors[key]

    # -- words ---------------------------------------------------------------
    def embed_letters(self, letters) -> TruncatedGroupElement:
        """Product of exp(a e_gamma) over (gamma, a) letters, left to right."""
        g = self.identity()
        for gamma, a in letters:
            g = g * self.root_letter(gamma, a)
        return g

    def embed_word(self, word) -> TruncatedGroupElement:
        return self.embed_letters(word.letters)

    # -- filtration ----------------------------------------------------------
    def filtration_height(self, g: TruncatedGroupElement) -> int:
        B = self.L.basis
        return min((B[k].height for k in g.log), default=self.N + 1)

    def scale_heights(self, g: TruncatedGroupElement, lam) -> TruncatedGroupElement:
        """The automorphism multiplying the height-n part of log by lam**n."""
        lam = Fraction(lam)
        B = self.L.basis
        return self.exp({k: c * lam ** B[k].height for k, c in g.log.items()})

    # -- left-normed commutators --------------------------------------------
    def left_normed_commutator(self, word, scalars=None) -> TruncatedGroupElement:
        """[x_i1(a1), [x_i2(a2), [..., x_in(an)]]] (all a = 1 by default), memoized on suffixes."""
        word = tuple(word)
        scalars = tuple(Fraction(s) for s in (scalars or (1,) * len(word)))
        key = (word, scalars)
        hit = self._commutator_cache.get(key)
        if hit is not None:
            return hit
        if len(word) == 1:
            g = self.letter(word[0], scalars[0])
        else:
            inner = self.left_normed_commutator(word[1:], scalars[1:])
            g = self.commutator_with_letter(word[0], scalars[0], inner)
        self._commutator_cache[key] = g
        return g

    # -- normal form ---------------------------------------------------------
    def _check_left_normed(self):
        if not getattr(self.L, "left_normed", False):
            raise ValueError("normal forms need a Lie algebra with a left-normed basis")

    def u_x(self, x: int, lam) -> TruncatedGroupElement:
        """[x_i1(lam), [x_i2(1), [..., x_in(1)]]] for the basis element x = [e_i1, [e_i2, ...]]."""
        self._check_left_normed()
        word = self.L.basis[x].word
        lam = Fraction(lam)
        if len(word) == 1:
            return self.letter(word[0], lam)
        e, conj = self._u_data(x)
        return TruncatedGroupElement(self, bch(self.L, scaled(e, -lam), scaled(conj, lam)))

    def _u_data(self, x: int):
        cache = self.__dict__.setdefault("_u_cache", {})
        if x not in cache:
            word = self.L.basis[x].word
            inner = self.left_normed_commutator(word[1:])
            e = self.L.generator(word[0])
            cache[x] = (e, ad_exp(self.L, inner.log, e, sign=-1))
        return cache[x]

    def normal_form(self, g: TruncatedGroupElement) -> list[tuple[int, Fraction]]:
        """(basis index, lambda) for every basis element, with g = prod u_x(lambda_x) in basis order."""
        self._check_left_normed()
        B = self.L.basis
        out = []
        rem = g
        for n in range(1, self.N + 1):
            if any(B[k].height < n for k in rem.log):
                raise ValueError("element is not in the expected filtration step")
            level = [b.index for b in B if b.height == n]
            P = self.identity()
            for x in level:
                lam = rem.log.get(x, Fraction(0))
                out.append((x, lam))
                if lam:
                    P = P * self.u_x(x, lam)
            rem = P.inverse() * rem
        if rem.log:
            raise ValueError("normal form extraction did not terminate at the identity")
        return out

    def rebuild(self, nf) -> TruncatedGroupElement:
        g = self.identity()
        for x, lam in nf:
            if lam:
                g = g * self.u_x(x, lam)
        return g

    def partial_products(self, nf) -> dict[int, TruncatedGroupElement]:
        """n -> prod over basis elements of height >= n of u_x(lambda_x)."""
        B = self.L.basis
        out = {}
        tail = self.identity()
        for n in range(self.N, 0, -1):
            level = self.identity()
            for x, lam in nf:
                if B[x].height == n and lam:
                    level = level * self.u_x(x, lam)
            tail = level * tail
            out[n] = tail
        return out

    def format_normal_form(self, nf, as_json: bool = False, include_zero: bool = False) -> str:
        B = self.L.basis
        rows = [(B[x].height, B[x].label, lam) for x, lam in nf if include_zero or lam]
        if as_json:
            return json.dumps([{"ht": h, "bracket": lab, "lambda": str(lam)} for h, lab, lam in rows])
        return "\n".join(f"ht={h} bracket={lab} lambda={lam}" for h, lab, lam in rows)

    # -- graded leading terms ------------------------------------------------
    def leading_span_dims(self, max_len: int | None = None) -> dict[int, int]:
        """Dimension of the span of height-n log parts of all length-n left-normed commutator words."""
        n_max = min(max_len or self.N, self.N)
        dims = {}
        words = [(i,) for i in range(self.L.rank)]
        for n in range(1, n_max + 1):
            E = EchelonBasis()
            live = []
            for w in words:
                g = self.left_normed_commutator(w)
                if g.log:
                    live.append(w)
                E.add(g.height_component(n))
            dims[n] = E.rank
            # a trivial suffix keeps every extension trivial
            words = [(i,) + w for w in live for i in range(self.L.rank)]
        return dims


@lru_cache(maxsize=16)
def _group(matrix, N):
    A = GCM(matrix)
    return TruncatedGroup(serre_quotient(A, N), A)


def truncated_group(A: GCM, N: int = 8) -> TruncatedGroup:
    """Shared (memoized) truncated group of the Serre quotient of A."""
    return _group(A.matrix, N)


def embed_word(word, N: int = 8) -> TruncatedGroupElement:
    return truncated_group(word.gcm, N).embed_word(word)


# ---------------------------------------------------------------------------
# root vectors for rank-2 subsystems

# e_gamma = c * (stored basis element at gamma) in serre_quotient(CANONICAL_RANK2[tag]),
# where local index 0 plays alpha (short) and 1 plays beta.  Generated by
# scripts/calibrate_root_vectors.py; tests recompute it.
CANONICAL_RANK2 = {
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
}
CALIBRATION = {
    "A1xA1": {(1, 0): Fraction(1), (0, 1): Fraction(1)},
    "A2": {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(-1)},
    "B2": {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(-1), (2, 1): Fraction(1, 2)},
    "G2": {
        (1, 0): Fraction(1),
        (0, 1): Fraction(1),
        (1, 1): Fraction(-1),
        (2, 1): Fraction(1, 2),
        (3, 1): Fraction(-1, 6),
        (3, 2): Fraction(-1, 6),
    },
}


def calibrated_root_vectors(L: GradedLieAlgebra, tag: str, a: int, b: int) -> dict:
    """Root vectors e_(r,s) in L for the subsystem with alpha = generator a, beta = generator b.

    From x_L(s) x_E(r) = x_E(r) x_L(s) x_g(C r s) ... with g = E + L, comparing
    the r*s terms of the logarithms gives C e_g = [e_L, e_E].  Every rule
    with a p = q = 1 term is used; disagreeing rules raise CalibrationError.
    """
    vecs = {(1, 0): L.generator(a), (0, 1): L.generator(b)}
    rules = [(late, early, g, C) for (late, early), ex in SWAP_RULES[tag].items() for g, C, p, q in ex if p == q == 1]
    pending = list(rules)
    while pending:
        progress = False
        rest = []
        for late, early, g, C in pending:
            if late in vecs and early in vecs:
                v = scaled(L.br(vecs[late], vecs[early]), Fraction(1, C))
                if g in vecs:
                    if vecs[g] != v:
                        raise CalibrationError(f"swap rules disagree on the root vector at {g} for {tag}")
                else:
                    vecs[g] = v
                progress = True
            else:
                rest.append((late, early, g, C))
        if not progress:
            raise CalibrationError(f"cannot reach roots {[r[2] for r in rest]} for {tag}")
        pending = rest
    return vecs


def measure_calibration(tag: str, N: int = 6) -> dict:
    """Scalars c with e_gamma = c * stored basis element, in the canonical algebra of ``tag``."""
    from .rootsystem import Rank2Type, positive_roots_rank2, validate_gcm

    A = validate_gcm(CANONICAL_RANK2[tag])
    L = serre_quotient(A, N)
    vecs = calibrated_root_vectors(L, tag, 0, 1)
    out = {}
    for g in positive_roots_rank2(Rank2Type(tag)):
        idx = L.by_degree[g]
        if len(idx) != 1 or set(vecs[g]) != {idx[0]}:
            raise CalibrationError(f"root vector at {g} is not a multiple of the basis element")
        out[g] = vecs[g][idx[0]]
    return out


# ---------------------------------------------------------------------------
# PBW envelope (reference model)


class Envelope:
    """Truncated enveloping algebra of L with the PBW basis of sorted index tuples."""

    def __init__(self, L: GradedLieAlgebra):
        self.L = L
        self.N = L.N
        self._heights = [b.height for b in L.basis]
        self._memo: dict = {}

    def height(self, m: tuple) -> int:
        return sum(self._heights[k] for k in m)

    def times_basis(self, m: tuple, y: int) -> dict:
        """PBW expansion of the monomial m times the basis element y."""
        if self.height(m) + self._heights[y] > self.N:
            return {}
        if not m or m[-1] <= y:
            return {m + (y,): Fraction(1)}
        key = (m, y)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        x, head = m[-1], m[:-1]
        out: dict = {}
        # m y = head x y = (head y) x + head [x, y]
        for mono, c in self.times_basis(head, y).items():
            axpy(out, c, self.times_basis(mono, x))
        for z, c in self.L.bracket_basis(x, y).items():
            axpy(out, c, self.times_basis(head, z))
        self._memo[key] = out
        return out

    def right_mul_basis(self, u: dict, y: int) -> dict:
        out: dict = {}
        for m, c in u.items():
            axpy(out, c, self.times_basis(m, y))
        return out

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for n, c in v.items():
            w = u
            for y in n:
                w = self.right_mul_basis(w, y)
                if not w:
                    break
            axpy(out, c, w)
        return out

    def from_lie(self, x: dict) -> dict:
        return {(k,): Fraction(c) for k, c in x.items() if c}

    def exp(self, x: dict) -> dict:
        """exp of a Lie vector without height-0 part."""
        out = {(): Fraction(1)}
        X = self.from_lie(x)
        term = {(): Fraction(1)}
        for k in range(1, self.N + 1):
            term = scaled(self.multiply(term, X), Fraction(1, k))
            if not term:
                break
            axpy(out, 1, term)
        return out

    def log(self, g: dict) -> dict:
        if g.get((), 0) != 1:
            raise ValueError("log needs constant term 1")
        z = {m: c for m, c in g.items() if m}
        out: dict = {}
        power = {(): Fraction(1)}
        for k in range(1, self.N + 1):
            power = self.multiply(power, z)
            if not power:
                break
            axpy(out, Fraction((-1) ** (k + 1), k), power)
        return out

    def lie_part(self, u: dict) -> dict:
        """Coordinates of u if it lies in the Lie subspace; raises otherwise."""
        if any(len(m) != 1 for m in u):
            raise ValueError("element is not in the Lie subspace")
        return {m[0]: c for m, c in u.items()}
