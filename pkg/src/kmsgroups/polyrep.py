"""3x3 matrices over Q[t] and the representation of the A2~ group sending

    x1(a) -> 1 + a E12,   x2(a) -> 1 + a E23,   x3(a) -> 1 + a t E31.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .rank2 import Rank2Element, commutator, generator
from .scalars import Polynomial
from .words import A2_TILDE, GroupWord, WordError

_ZERO = Polynomial()
_ONE = Polynomial.constant(1)


@dataclass(frozen=True)
class PolyMatrix3:
    rows: tuple  # 3 tuples of 3 Polynomials

    @classmethod
    def identity(cls) -> PolyMatrix3:
        return cls(tuple(tuple(_ONE if i == j else _ZERO for j in range(3)) for i in range(3)))

    @classmethod
    def elementary(cls, i: int, j: int, p: Polynomial) -> PolyMatrix3:
        """1 + p E_ij (0-based i != j)."""
        rows = [list(r) for r in cls.identity().rows]
        rows[i][j] = p
        return cls(tuple(tuple(r) for r in rows))

    def __getitem__(self, ij) -> Polynomial:
        return self.rows[ij[0]][ij[1]]

    def __mul__(self, other: PolyMatrix3) -> PolyMatrix3:
        a, b = self.rows, other.rows
        return PolyMatrix3(
            tuple(tuple(sum((a[i][k] * b[k][j] for k in range(3)), _ZERO) for j in range(3)) for i in range(3))
        )

    def det(self) -> Polynomial:
        m = self.rows
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def adjugate(self) -> PolyMatrix3:
        m = self.rows

        def minor(i, j):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

        return PolyMatrix3(
            tuple(tuple(minor(j, i) if (i + j) % 2 == 0 else -minor(j, i) for j in range(3)) for i in range(3))
        )

    def inverse(self) -> PolyMatrix3:
        """Inverse of a determinant-1 matrix."""
        if self.det() != _ONE:
            raise ValueError("only determinant-1 matrices are inverted over Q[t]")
        return self.adjugate()

    def is_identity(self) -> bool:
        return self == PolyMatrix3.identity()

    def max_degree(self) -> int:
        return max(p.degree for r in self.rows for p in r)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)

    def to_json(self) -> str:
        return json.dumps([[str(p) for p in r] for r in self.rows])


def commutator_matrix(g: PolyMatrix3, h: PolyMatrix3) -> PolyMatrix3:
    return g.inverse() * h.inverse() * g * h


def phi_generator(i: int, a) -> PolyMatrix3:
    """Image of x_i(a), i in {1, 2, 3}."""
    a = Fraction(a)
    if i == 1:
        return PolyMatrix3.elementary(0, 1, Polynomial.constant(a))
    if i == 2:
        return PolyMatrix3.elementary(1, 2, Polynomial.constant(a))
    if i == 3:
        return PolyMatrix3.elementary(2, 0, Polynomial((0, a)))
    raise ValueError(f"generator index {i} outside 1..3")


# [x_alpha(1), x_beta(1)] = x_{alpha+beta}(KAPPA) in the A2 group
KAPPA = commutator(generator("A2", (1, 0), 1), generator("A2", (0, 1), 1)).coord((1, 1))


def _letter_image(gamma, a) -> PolyMatrix3:
    supp = [k for k, c in enumerate(gamma) if c]
    if len(supp) == 1:
        return phi_generator(supp[0] + 1, a)
    i, j = supp  # every pair of A2~ is of type A2, alpha the lower index
    x = phi_generator(i + 1, Fraction(a) / KAPPA)
    y = phi_generator(j + 1, 1)
    return commutator_matrix(x, y)


def phi_word(w: GroupWord) -> PolyMatrix3:
    if w.gcm.matrix != A2_TILDE:
        raise WordError("the matrix representation is defined for A2~ words only")
    M = PolyMatrix3.identity()
    for gamma, a in w.letters:
        M = M * _letter_image(gamma, a)
    return M


def check_image_invariants(M: PolyMatrix3) -> bool:
    """det = 1 and every entry below the diagonal is divisible by t."""
    if M.det() != _ONE:
        return False
    return all(M[i, j].divisible_by_t() for i in range(3) for j in range(i))


def rank2_relations_hold(i: int, j: int, a, b) -> bool:
    """The A2 relations of the pair i < j (0-based) hold for the images, at parameters a, b.

    Checks x_j(b) x_i(a) against its collected form and that x_{alpha_i+alpha_j}(a)
    commutes with x_i(b), x_j(b) and with x_{alpha_i+alpha_j}(b).
    """
    g = Rank2Element.identity("A2").times_letter((0, 1), b).times_letter((1, 0), a)

    def glob(r, s):
        gamma = [0, 0, 0]
        gamma[i] += r
        gamma[j] += s
        return tuple(gamma)

    swapped = phi_generator(j + 1, b) * phi_generator(i + 1, a)
    collected = PolyMatrix3.identity()
    for (r, s), c in g.letters():
        collected = collected * _letter_image(glob(r, s), c)
    if swapped != collected:
        return False
    root = _letter_image(glob(1, 1), a)
    others = [phi_generator(i + 1, b), phi_generator(j + 1, b), _letter_image(glob(1, 1), b)]
    return all(root * o == o * root for o in others)
