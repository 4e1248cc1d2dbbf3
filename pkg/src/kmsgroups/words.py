"""Words in the rank-2 root groups of a Kac-Moody-Steinberg group.

A :class:`GroupWord` is a finite product of letters x_g(a), each g a positive
real root of some rank-2 subsystem (or a simple root).  Words stay syntactic:
equality is only ever decided through an image (truncated group, matrices).

Text grammar::

    word   := factor ( ['*'] factor )*
    factor := 'x' INT '(' scalar ')'              simple letter, 1-based index
            | 'x(' INT (',' INT)* ')(' scalar ')'  letter at a multidegree
            | '[' word ',' word ']'                commutator u^-1 v^-1 u v
            | 'inv(' word ')'
            | '1'                                  empty word
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .rank2 import Rank2Element
from .rootsystem import GCM, is_r_spherical, is_spherical, m_ij, positive_roots_rank2, rank2_roles
from .scalars import QQ


class WordError(ValueError):
    pass


class WordParseError(WordError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos = text, pos
        super().__init__(f"column {pos + 1}: {msg}\n  {text}\n  {' ' * pos}^")


def _support(gamma) -> tuple[int, ...]:
    return tuple(k for k, c in enumerate(gamma) if c)


def check_root(A: GCM, gamma) -> tuple[int, ...]:
    """Validate a letter root; returns its support (one or two indices)."""
    gamma = tuple(gamma)
    if len(gamma) != A.rank or any(c < 0 for c in gamma):
        raise WordError(f"{gamma} is not a non-negative multidegree of rank {A.rank}")
    supp = _support(gamma)
    if len(supp) == 1 and gamma[supp[0]] == 1:
        return supp
    if len(supp) == 2:
        i, j = supp
        if m_ij(A, i, j) != float("inf"):
            t, a, b = rank2_roles(A, i, j)
            if (gamma[a], gamma[b]) in positive_roots_rank2(t):
                return supp
    raise WordError(f"{gamma} is not a positive real root of a spherical rank-2 subsystem")


@dataclass(frozen=True)
class GroupWord:
    gcm: GCM
    letters: tuple = ()
    field: object = field(default=QQ, compare=False)

    def __post_init__(self):
        fixed = []
        for gamma, a in self.letters:
            gamma = tuple(gamma)
            check_root(self.gcm, gamma)
            fixed.append((gamma, self.field(a)))
        object.__setattr__(self, "letters", tuple(fixed))

    # -- constructors --------------------------------------------------------
    @classmethod
    def simple(cls, A: GCM, i: int, a, field=QQ) -> GroupWord:
        return cls(A, ((A.simple_root(i), a),), field)

    @classmethod
    def parse(cls, A: GCM, text: str, field=QQ) -> GroupWord:
        return _Parser(A, text, field).run()

    # -- group structure ------------------------------------------------------
    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.gcm, self.letters + other.letters, self.field)

    def inverse(self) -> GroupWord:
        return GroupWord(self.gcm, tuple((g, -a) for g, a in reversed(self.letters)), self.field)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for g, a in self.letters:
            supp = _support(g)
            if len(supp) == 1:
                parts.append(f"x{supp[0] + 1}({a})")
            else:
                parts.append(f"x({','.join(map(str, g))})({a})")
        return " ".join(parts)


def commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """[u, v] = u^-1 v^-1 u v."""
    return u.inverse() * v.inverse() * u * v


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, A: GCM, text: str, field):
        self.A, self.text, self.field, self.pos = A, text, field, 0

    def error(self, msg, pos=None):
        raise WordParseError(self.text, self.pos if pos is None else pos, msg)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def run(self) -> GroupWord:
        w = self.word()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return w

    def word(self) -> GroupWord:
        w = GroupWord(self.A, (), self.field)
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                c = self.peek()
            if c in ("", ",", "]", ")"):
                return w
            w = w * self.factor()

    def factor(self) -> GroupWord:
        start = self.pos
        if self.text.startswith("inv", self.pos):
            self.pos += 3
            self.expect("(")
            w = self.word()
            self.expect(")")
            return w.inverse()
        c = self.text[self.pos]
        if c == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        if c == "1":
            self.pos += 1
            return GroupWord(self.A, (), self.field)
        if c == "x":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                gamma = self.int_list()
                self.expect(")")
            else:
                i = self.integer()
                if not 1 <= i <= self.A.rank:
                    self.error(f"index {i} outside 1..{self.A.rank}", start)
                gamma = self.A.simple_root(i - 1)
            self.expect("(")
            a = self.scalar()
            self.expect(")")
            try:
                return GroupWord(self.A, ((gamma, a),), self.field)
            except WordError as exc:
                self.error(str(exc), start)
        self.error(f"unexpected {c!r}")

    def integer(self) -> int:
        self.skip()
        m = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if m == self.pos:
            self.error("expected an integer")
        return int(self.text[m : self.pos])

    def int_list(self) -> tuple:
        out = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.integer())
        return tuple(out)

    def scalar(self):
        self.skip()
        end = self.text.find(")", self.pos)
        if end < 0:
            self.error("unterminated scalar")
        raw = self.text[self.pos : end]
        try:
            val = self.field.parse(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            self.error(f"bad scalar {raw.strip()!r} for {self.field.name}: {exc}")
        self.pos = end
        return val


# ---------------------------------------------------------------------------
# rewriting and maps


def _run_subsystem(A: GCM, supp: set):
    """Pair (i, j) for a letter support set if it is a spherical rank-2 subsystem."""
    if len(supp) == 1:
        return True
    if len(supp) == 2:
        i, j = sorted(supp)
        return m_ij(A, i, j) != float("inf")
    return False


def _merge_run(w: GroupWord, run: list) -> list:
    A, F = w.gcm, w.field
    supp = set()
    for g, _ in run:
        supp |= set(_support(g))
    if len(supp) == 1:
        (k,) = supp
        total = sum((a for _, a in run), F.zero)
        return [(A.simple_root(k), total)] if total else []
    i, j = sorted(supp)
    t, a_idx, b_idx = rank2_roles(A, i, j)
    g = Rank2Element.identity(t, F)
    for gamma, c in run:
        g = g.times_letter((gamma[a_idx], gamma[b_idx]), c)
    out = []
    for (r, s), c in g.letters():
        gamma = [0] * A.rank
        gamma[a_idx] += r
        gamma[b_idx] += s
        out.append((tuple(gamma), c))
    return out


def local_rewrite(w: GroupWord) -> GroupWord:
    """Collect maximal runs of letters sharing a spherical rank-2 subsystem into rank-2 normal form."""
    letters = list(w.letters)
    for _ in range(len(letters) + 1):
        out, run, supp = [], [], set()
        for g, a in letters:
            s = supp | set(_support(g))
            if run and _run_subsystem(w.gcm, s):
                run.append((g, a))
                supp = s
            else:
                if run:
                    out += _merge_run(w, run)
                run, supp = [(g, a)], set(_support(g))
        if run:
            out += _merge_run(w, run)
        if out == letters:
            break
        letters = out
    return GroupWord(w.gcm, tuple(letters), w.field)


def functoriality_map(w: GroupWord, A2: GCM, indices=None) -> GroupWord:
    """Image under U_A -> U_A' for A' <= A on the index subset ``indices`` (default: the first rank(A') indices).

    Letters whose root (restricted to ``indices``) is a root of A' are kept, all others deleted.
    """
    J = list(range(A2.rank)) if indices is None else list(indices)
    A = w.gcm
    if len(J) != A2.rank or len(set(J)) != len(J) or any(not 0 <= k < A.rank for k in J):
        raise WordError("index subset does not match the target matrix")
    for p, q in combinations(range(len(J)), 2):
        for x, y in ((p, q), (q, p)):
            if abs(A[J[x], J[y]]) < abs(A2[x, y]):
                raise WordError(
                    f"target entry ({x + 1},{y + 1}) exceeds the source entry in absolute value"
                )
    pos = {k: n for n, k in enumerate(J)}
    out = []
    for gamma, a in w.letters:
        supp = _support(gamma)
        if any(k not in pos for k in supp):
            continue
        g2 = tuple(gamma[k] for k in J)
        try:
            check_root(A2, g2)
        except WordError:
            continue
        out.append((g2, a))
    return GroupWord(A2, tuple(out), w.field)


def pi_lambda_word(w: GroupWord, lam) -> GroupWord:
    lam = w.field(lam)
    return GroupWord(w.gcm, tuple((g, a * lam ** sum(g)) for g, a in w.letters), w.field)


A2_TILDE = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def build_a2tilde_witness(A: GCM) -> GroupWord:
    """[a, [a, b]] with a = [x1(1), x2(1)], b = [x2(1), x3(1)], expanded into 40 letters."""
    if A.matrix != A2_TILDE:
        raise WordError("the witness is defined for the affine matrix of type A2~ only")
    x = [GroupWord.simple(A, i, 1) for i in range(3)]
    a = commutator(x[0], x[1])
    b = commutator(x[1], x[2])
    return commutator(a, commutator(a, b))


@dataclass(frozen=True)
class Verdict:
    residually_nilpotent: bool
    two_spherical: bool
    three_spherical: bool
    spherical: bool


def residual_nilpotence_verdict(A: GCM) -> Verdict:
    """For 2-spherical A the group over Q is residually nilpotent exactly when A is 3-spherical."""
    if not is_r_spherical(A, 2):
        raise WordError("the verdict is only defined for 2-spherical matrices")
    three = is_r_spherical(A, 3)
    return Verdict(three, True, three, is_spherical(A))
