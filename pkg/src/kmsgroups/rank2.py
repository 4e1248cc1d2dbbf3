"""Normal-form arithmetic in the unipotent group of a spherical rank-2 root system.

An element is the tuple of coordinates (c_1, ..., c_m) standing for
x_{g_1}(c_1) ... x_{g_m}(c_m), where g_1, ..., g_m are the positive roots in
the fixed order of :func:`positive_roots_rank2`.  Roots are written locally as
pairs (r, s) meaning r*alpha + s*beta, alpha being the short simple root.

Products are computed by collection: a letter x_k(a) appended on the right is
moved left past every coordinate letter of larger index using the swap rules

    x_L(b) x_E(a) = x_E(a) x_L(b) * prod x_e(C a^p b^q)      (E before L)

and the letters pushed out to its right are folded back in recursively.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .rootsystem import Rank2Type, positive_roots_rank2
from .scalars import QQ

A, B = (1, 0), (0, 1)
AB, A2B, A3B, A3B2 = (1, 1), (2, 1), (3, 1), (3, 2)

# (later root, earlier root) -> [(extra root, C, power of earlier param, power of later param)]
_RULES = {
    "A1xA1": {},
    "A2": {(B, A): [(AB, 1, 1, 1)]},
    "B2": {
        (B, A): [(AB, 1, 1, 1), (A2B, 1, 2, 1)],
        (AB, A): [(A2B, 2, 1, 1)],
    },
    "G2": {
        (B, A): [(AB, 1, 1, 1), (A2B, 1, 2, 1), (A3B, 1, 3, 1), (A3B2, 1, 3, 2)],
        (AB, A): [(A2B, 2, 1, 1), (A3B, 3, 2, 1), (A3B2, 3, 1, 2)],
        (A2B, A): [(A3B, 3, 1, 1)],
        (A3B, B): [(A3B2, -1, 1, 1)],
        (A2B, AB): [(A3B2, 3, 1, 1)],
    },
}

SWAP_RULES = MappingProxyType(
    {tag: MappingProxyType({k: tuple(v) for k, v in rules.items()}) for tag, rules in _RULES.items()}
)


def _index_rules(tag: str):
    roots = positive_roots_rank2(Rank2Type(tag))
    pos = {g: i for i, g in enumerate(roots)}
    table = {}
    for (late, early), extras in SWAP_RULES[tag].items():
        table[(pos[late], pos[early])] = tuple((pos[e], C, p, q) for e, C, p, q in extras)
    return roots, pos, table


_TABLES = {tag: _index_rules(tag) for tag in SWAP_RULES}


def _push(coords: list, k: int, a, rules, zero) -> list:
    """coords (normal form) times x_k(a), returned as a new list."""
    if not a:
        return coords
    m = len(coords)
    tail = []  # letters that end up right of x_k(a), as (index, scalar), left to right
    for j in range(m - 1, k, -1):
        c = coords[j]
        if not c:
            continue
        extras = []
        for e, C, p, q in rules.get((j, k), ()):
            val = C * (a**p) * (c**q)
            if val:
                extras.append((e, val))
        tail = [(j, c)] + extras + tail
    out = coords[: k + 1] + [zero] * (m - k - 1)
    out[k] = out[k] + a
    for j, c in tail:
        out = _push(out, j, c, rules, zero)
    return out


@dataclass(frozen=True)
class Rank2Element:
    type: Rank2Type
    coords: tuple
    field: object = QQ

    def __post_init__(self):
        if len(self.coords) != self.type.nroots:
            raise ValueError(f"{self.type} needs {self.type.nroots} coordinates, got {len(self.coords)}")

    @classmethod
    def identity(cls, t: Rank2Type | str, field=QQ) -> Rank2Element:
        t = Rank2Type(t) if isinstance(t, str) else t
        return cls(t, tuple(field.zero for _ in range(t.nroots)), field)

    @classmethod
    def from_coords(cls, t: Rank2Type | str, coords, field=QQ) -> Rank2Element:
        t = Rank2Type(t) if isinstance(t, str) else t
        return cls(t, tuple(field(c) for c in coords), field)

    @property
    def roots(self) -> list[tuple[int, int]]:
        return _TABLES[self.type.tag][0]

    def is_identity(self) -> bool:
        return not any(self.coords)

    def coord(self, root) -> object:
        return self.coords[_TABLES[self.type.tag][1][tuple(root)]]

    def letters(self) -> list[tuple[tuple[int, int], object]]:
        """Nonzero (root, scalar) letters in normal-form order."""
        return [(g, c) for g, c in zip(self.roots, self.coords) if c]

    def times_letter(self, root, a) -> Rank2Element:
        roots, pos, rules = _TABLES[self.type.tag]
        k = pos.get(tuple(root))
        if k is None:
            raise ValueError(f"{root} is not a positive root of {self.type}")
        out = _push(list(self.coords), k, self.field(a), rules, self.field.zero)
        return Rank2Element(self.type, tuple(out), self.field)

    def __mul__(self, other: Rank2Element) -> Rank2Element:
        if other.type != self.type:
            raise ValueError("cannot multiply elements of different rank-2 types")
        if other.field != self.field:
            raise ValueError("cannot multiply elements over different fields")
        g = self
        for root, c in other.letters():
            g = g.times_letter(root, c)
        return g

    def inverse(self) -> Rank2Element:
        g = Rank2Element.identity(self.type, self.field)
        for root, c in reversed(self.letters()):
            g = g.times_letter(root, -c)
        return g

    def __str__(self):
        names = {A: "a", B: "b"}
        parts = []
        for (r, s), c in self.letters():
            name = names.get((r, s)) or f"{r if r > 1 else ''}a+{s if s > 1 else ''}b"
            parts.append(f"x[{name}]({c})")
        return "*".join(parts) or "1"


def generator(t: Rank2Type | str, root, a, field=QQ) -> Rank2Element:
    t = Rank2Type(t) if isinstance(t, str) else t
    if tuple(root) not in positive_roots_rank2(t):
        raise ValueError(f"{tuple(root)} is not a positive root of {t}")
    return Rank2Element.identity(t, field).times_letter(root, a)


def multiply(g: Rank2Element, h: Rank2Element) -> Rank2Element:
    return g * h


def inverse(g: Rank2Element) -> Rank2Element:
    return g.inverse()


def commutator(g: Rank2Element, h: Rank2Element) -> Rank2Element:
    """[g, h] = g^-1 h^-1 g h."""
    return g.inverse() * h.inverse() * g * h


def word_product(t: Rank2Type | str, letters, field=QQ) -> Rank2Element:
    """Evaluate a sequence of (root, scalar) letters, left to right."""
    t = Rank2Type(t) if isinstance(t, str) else t
    g = Rank2Element.identity(t, field)
    for root, a in letters:
        g = g.times_letter(root, a)
    return g


def alternating_letters(pairs) -> list:
    """Letters of x_b(b_n) x_a(a_n) ... x_b(b_1) x_a(a_1); ``pairs[0]`` is (a_1, b_1)."""
    out = []
    for a, b in reversed(list(pairs)):
        out += [(B, b), (A, a)]
    return out


def closed_form_product(t: Rank2Type | str, pairs, field=QQ) -> Rank2Element:
    """x_b(b_n) x_a(a_n) ... x_b(b_1) x_a(a_1) from running sums, without collection."""
    t = Rank2Type(t) if isinstance(t, str) else t
    z = field.zero
    An = Bn = R = S = T = U = z
    for a, b in pairs:
        a, b = field(a), field(b)
        B_prev, R_prev = Bn, R
        An = An + a
        Bn = Bn + b
        R = R + b * An
        S = S + b * An**2
        T = T + b * An**3
        U = U + b**2 * An**3 - b * An**3 * B_prev + 3 * b * An**2 * R_prev
    full = (An, Bn, R, S, T, U)
    return Rank2Element(t, full[: t.nroots], field)


def pi_lambda(g: Rank2Element, lam) -> Rank2Element:
    """Scale the coordinate at root r*alpha+s*beta by lam**(r+s)."""
    lam = g.field(lam)
    return Rank2Element(
        g.type, tuple(c * lam ** (r + s) for (r, s), c in zip(g.roots, g.coords)), g.field
    )

