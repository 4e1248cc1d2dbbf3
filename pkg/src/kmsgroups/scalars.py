"""Exact coefficient domains: Q, the prime fields GF(p), GF(4) and Q[t].

Rationals are plain :class:`fractions.Fraction` values.  Finite field elements
are small immutable objects that refuse to mix with elements of another field;
plain Python ints are coerced so that integer structure constants can be
written as ``3 * a * b`` whatever the field.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

__all__ = [
    "Fraction",
    "FpElement",
    "F4Element",
    "RationalField",
    "PrimeField",
    "GF4Field",
    "QQ",
    "GF",
    "GF4",
    "Polynomial",
    "field_arith",
    "gf4_table",
    "parse_rational",
    "parse_field",
]


class MixedDomainError(TypeError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (surrounding blanks allowed)."""
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(s)


# ---------------------------------------------------------------------------
# prime fields


@dataclass(frozen=True, slots=True)
class FpElement:
    value: int
    p: int

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise MixedDomainError(f"GF({self.p}) and GF({other.p}) do not mix")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement((self.value + v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement((self.value - v) % self.p, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement((v - self.value) % self.p, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElement((self.value * v) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement((-self.value) % self.p, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpElement(pow(self.value, k, self.p), self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FpElement(v % self.p, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"GF({self.p})({self.value})"


# ---------------------------------------------------------------------------
# GF(4) = F2[y]/(y^2+y+1); code c0 + 2*c1 stands for c0 + c1*y

_F4_NAMES = ("0", "1", "y", "y+1")
_F4_ADD = tuple(tuple(a ^ b for b in range(4)) for a in range(4))


def _f4_mul_raw(a: int, b: int) -> int:
    # (a0 + a1 y)(b0 + b1 y) with y^2 = y + 1
    a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
    c0 = (a0 & b0) ^ (a1 & b1)
    c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
    return c0 | (c1 << 1)


_F4_MUL = tuple(tuple(_f4_mul_raw(a, b) for b in range(4)) for a in range(4))
_F4_INV = {a: next(b for b in range(1, 4) if _F4_MUL[a][b] == 1) for a in range(1, 4)}


@dataclass(frozen=True, slots=True)
class F4Element:
    code: int

    def _coerce(self, other):
        if isinstance(other, F4Element):
            return other.code
        if isinstance(other, int):
            return other & 1
        if isinstance(other, FpElement):
            raise MixedDomainError("GF(4) and GF(p) elements do not mix")
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return F4Element(_F4_ADD[self.code][v])

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return F4Element(_F4_MUL[self.code][v])

    __rmul__ = __mul__

    def __neg__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = F4Element(1)
        for _ in range(k):
            r = r * self
        return r

    def inverse(self) -> F4Element:
        if self.code == 0:
            raise ZeroDivisionError("0 has no inverse in GF(4)")
        return F4Element(_F4_INV[self.code])

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * F4Element(v).inverse()

    def __eq__(self, other):
        if isinstance(other, F4Element):
            return self.code == other.code
        if isinstance(other, int):
            return self.code == other & 1
        return NotImplemented

    def __hash__(self):
        return hash(("F4", self.code))

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return _F4_NAMES[self.code]

    __repr__ = __str__


def gf4_table() -> tuple[tuple[tuple[F4Element, ...], ...], tuple[tuple[F4Element, ...], ...]]:
    """Addition and multiplication tables of GF(4), rows/columns ordered 0, 1, y, y+1."""
    add = tuple(tuple(F4Element(_F4_ADD[a][b]) for b in range(4)) for a in range(4))
    mul = tuple(tuple(F4Element(_F4_MUL[a][b]) for b in range(4)) for a in range(4))
    return add, mul


# ---------------------------------------------------------------------------
# field descriptors


class RationalField:
    name = "Q"
    finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, v) -> Fraction:
        if isinstance(v, str):
            return parse_rational(v)
        return Fraction(v)

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def random(self, rng: random.Random, height: int = 5) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    finite = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    @property
    def order(self) -> int:
        return self.p

    def __call__(self, v) -> FpElement:
        if isinstance(v, FpElement):
            if v.p != self.p:
                raise MixedDomainError(f"GF({v.p}) element given to GF({self.p})")
            return v
        if isinstance(v, str):
            v = parse_rational(v)
        if isinstance(v, Fraction):
            return FpElement(v.numerator % self.p, self.p) / FpElement(v.denominator % self.p, self.p)
        return FpElement(int(v) % self.p, self.p)

    def parse(self, text: str) -> FpElement:
        return self(text)

    def elements(self) -> Iterator[FpElement]:
        return (FpElement(v, self.p) for v in range(self.p))

    def contains(self, x) -> bool:
        return isinstance(x, FpElement) and x.p == self.p

    def random(self, rng: random.Random, height: int = 0) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


class GF4Field:
    finite = True
    name = "F4"
    order = 4
    zero = F4Element(0)
    one = F4Element(1)
    y = F4Element(2)

    def __call__(self, v) -> F4Element:
        if isinstance(v, F4Element):
            return v
        if isinstance(v, str):
            return self.parse(v)
        return F4Element(int(v) & 1)

    def parse(self, text: str) -> F4Element:
        s = text.replace(" ", "")
        for code, name in enumerate(_F4_NAMES):
            if s == name or (code == 3 and s == "1+y"):
                return F4Element(code)
        raise ValueError(f"not a GF(4) element: {text!r}")

    def elements(self) -> Iterator[F4Element]:
        return (F4Element(c) for c in range(4))

    def contains(self, x) -> bool:
        return isinstance(x, F4Element)

    def random(self, rng: random.Random, height: int = 0) -> F4Element:
        return F4Element(rng.randrange(4))

    def __repr__(self):
        return "GF4"

    def __eq__(self, other):
        return isinstance(other, GF4Field)

    def __hash__(self):
        return hash("F4")


QQ = RationalField()
GF4 = GF4Field()


def GF(q: int):
    """The field with q elements, for q prime or q = 4."""
    if q == 4:
        return GF4
    return PrimeField(q)


def parse_field(name: str):
    """``Q``/``QQ`` or ``F<q>``/``GF<q>`` with q in {2, 3, 4, 5, 7} (any prime accepted)."""
    s = name.strip().upper()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"G?F\(?(\d+)\)?", s)
    if not m:
        raise ValueError(f"unknown field {name!r}")
    return GF(int(m.group(1)))


def _domain(x):
    if isinstance(x, FpElement):
        return ("F", x.p)
    if isinstance(x, F4Element):
        return ("F", 4)
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return "Q"
    if isinstance(x, Polynomial):
        return "Q[t]"
    raise TypeError(f"unsupported scalar {x!r}")


def field_arith(op: str, x, y=None):
    """Exact ``add``/``sub``/``mul``/``neg``/``inv``/``div`` on scalars of one domain."""
    dx = _domain(x)
    if y is not None and _domain(y) != dx:
        raise MixedDomainError(f"cannot combine {x!r} and {y!r}")
    if dx == "Q":
        x = Fraction(x)
        y = Fraction(y) if y is not None else None
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x if dx == "Q" else x.inverse()
    if op == "div":
        if not y:
            raise ZeroDivisionError("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Q[t]


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in t with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((Fraction(c),))

    @classmethod
    def t(cls) -> Polynomial:
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def divisible_by_t(self) -> bool:
        return self.coeff(0) == 0

    @staticmethod
    def _lift(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((Fraction(other),))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(tuple(self.coeff(k) + o.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = Polynomial.constant(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        """Parse sums like ``1/2 + 3*t - t^2``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc = cls()
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            body = term[1:]
            m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?(t(?:\^(\d+))?)?", body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad polynomial term {term!r}")
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            acc = acc + cls(tuple([Fraction(0)] * k + [sign * c]))
        return acc
