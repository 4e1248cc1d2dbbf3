import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from kmsgroups.polyrep import (
    KAPPA,
    PolyMatrix3,
    check_image_invariants,
    commutator_matrix,
    phi_generator,
    phi_word,
    rank2_relations_hold,
)
from kmsgroups.rootsystem import cartan
from kmsgroups.scalars import Polynomial
from kmsgroups.truncated import truncated_group
from kmsgroups.words import GroupWord, WordError, build_a2tilde_witness

F = Fraction
A2T = cartan("A2t")
t = sp.Symbol("t")
small = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def sympy_phi(word: GroupWord) -> sp.Matrix:
    """Independent evaluation: simple letters as sympy matrices, root letters as matrix commutators."""

    def gen(i, a):
        M = sp.eye(3)
        if i == 0:
            M[0, 1] = a
        elif i == 1:
            M[1, 2] = a
        else:
            M[2, 0] = a * t
        return M

    out = sp.eye(3)
    for gamma, a in word.letters:
        supp = [k for k, c in enumerate(gamma) if c]
        a = sp.Rational(a.numerator, a.denominator)
        if len(supp) == 1:
            out = out * gen(supp[0], a)
        else:
            i, j = supp
            x, y = gen(i, a / int(KAPPA)), gen(j, 1)
            out = out * (x.inv() * y.inv() * x * y)
    return out.applyfunc(sp.expand)


def to_sympy(M: PolyMatrix3) -> sp.Matrix:
    return sp.Matrix(
        3, 3, lambda i, j: sum(sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(M[i, j].coeffs))
    )


def test_generator_images():
    assert phi_generator(1, 2)[0, 1] == Polynomial.constant(2)
    assert phi_generator(2, 3)[1, 2] == Polynomial.constant(3)
    assert phi_generator(3, 5)[2, 0] == Polynomial((0, 5))
    with pytest.raises(ValueError):
        phi_generator(4, 1)


def test_commutator_of_first_two_generators():
    M = phi_word(GroupWord.parse(A2T, "[x1(1),x2(1)]"))
    assert M == PolyMatrix3.elementary(0, 2, Polynomial.constant(1))
    assert KAPPA == -1


def test_witness_maps_to_identity():
    assert phi_word(build_a2tilde_witness(A2T)).is_identity()


def test_non_a2tilde_words_rejected():
    with pytest.raises(WordError):
        phi_word(GroupWord.parse(cartan("A2"), "x1(1)"))


def test_inverse_and_determinant():
    M = phi_word(GroupWord.parse(A2T, "x1(2) x3(1) x2(-1/2) x3(3)"))
    assert M.det() == Polynomial.constant(1)
    assert (M * M.inverse()).is_identity()
    with pytest.raises(ValueError):
        PolyMatrix3.elementary(0, 0, Polynomial.constant(2)).inverse()


def test_heisenberg_laws():
    g = phi_word(GroupWord.parse(A2T, "[x1(1),x2(1)]"))
    h = phi_word(GroupWord.parse(A2T, "[x2(1),x3(1)]"))
    gh = commutator_matrix(g, h)
    assert not gh.is_identity()
    assert commutator_matrix(g, gh).is_identity()
    assert commutator_matrix(h, gh).is_identity()


@pytest.mark.parametrize("i,j", [(0, 1), (1, 2), (0, 2)])
@pytest.mark.parametrize("a,b", [(1, 1), (F(-2, 3), 5), (3, F(1, 2))])
def test_rank2_relations(i, j, a, b):
    assert rank2_relations_hold(i, j, F(a), F(b))


letters = st.lists(
    st.tuples(st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1)]), small),
    max_size=8,
)


@given(letters)
def test_phi_matches_sympy(ls):
    w = GroupWord(A2T, tuple(ls))
    M = phi_word(w)
    assert to_sympy(M) == sympy_phi(w)
    assert check_image_invariants(M)


def test_kernel_contains_only_residual_words():
    """Words with nontrivial truncated image never map to the identity matrix."""
    G = truncated_group(A2T, 10)
    rng = random.Random(17)
    roots = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1)]
    for _ in range(200):
        n = rng.randint(1, 8)
        w = GroupWord(A2T, tuple((rng.choice(roots), F(rng.randint(-3, 3), rng.randint(1, 2))) for _ in range(n)))
        if not G.embed_word(w).is_identity():
            assert not phi_word(w).is_identity()


def test_invariant_check_rejects_bad_matrices():
    assert not check_image_invariants(PolyMatrix3.elementary(1, 0, Polynomial.constant(1)))
    assert not check_image_invariants(PolyMatrix3.elementary(0, 0, Polynomial.constant(2)))


def test_json_and_text():
    import json

    M = phi_generator(3, F(1, 2))
    assert json.loads(M.to_json())[2][0] == str(Polynomial((0, F(1, 2))))
    assert len(str(M).splitlines()) == 3
    assert M.max_degree() == 1
