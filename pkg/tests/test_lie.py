from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmsgroups.lie import (
    RelatorError,
    bracket,
    free_lie,
    lyndon_words,
    multidegrees,
    peterson_multiplicity_oracle,
    quotient_by_relators,
    root_multiplicity,
    serre_quotient,
    witt_dimension,
)
from kmsgroups.rootsystem import cartan, validate_gcm

from .oracles import necklace_count

G2_LONG_FIRST = validate_gcm([[2, -1], [-3, 2]])  # index 0 long, index 1 short
# the seven relators, index 0 long and index 1 short
G2_LIKE_RELATORS = [
    (0, 0, 0, 1),
    (1, 0, 0, 1),
    (0, 0, 1, 1, 0),
    (1, 0, 1, 1, 0),
    (1, 1, 1, 1, 0),
    (0, 0, 1, 1, 1, 0),
    (1, 0, 1, 1, 1, 0),
]
PRESENTATIONS = [
    # relators, matching GCM (index 0 first)
    ([(0, 1)], [[2, 0], [0, 2]]),
    ([(0, 0, 1), (1, 1, 0)], [[2, -1], [-1, 2]]),
    ([(0, 0, 1), (1, 1, 1, 0), (0, 1, 1, 0)], [[2, -1], [-2, 2]]),
]


def test_free_lie_examples():
    L = free_lie(2, 3)
    assert L.dim_at((1, 1)) == 1
    assert L.dim_at((2, 1)) == 1
    assert L.dims_by_height()[2] == 2


@pytest.mark.parametrize("n,N", [(2, 7), (3, 5)])
def test_free_lie_dims_match_necklaces(n, N):
    L = free_lie(n, N)
    for h in range(1, N + 1):
        for d in multidegrees(n, h):
            assert L.dim_at(d) == necklace_count(d) == witt_dimension(d)


def test_lyndon_words_small():
    assert lyndon_words(2, 3) == [(0,), (0, 0, 1), (0, 1), (0, 1, 1), (1,)]


def test_serre_quotient_examples():
    assert serre_quotient(cartan("A2"), 3).dims_by_height() == [2, 1, 0]
    G = serre_quotient(validate_gcm([[2, -3], [-1, 2]]), 6)
    assert G.dim == 6
    assert all(G.dim_at(r) == 1 for r in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)])
    assert serre_quotient(cartan("A2t"), 3).dim_at((1, 1, 1)) == 2


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "A2t", "A3t"])
def test_serre_relations_vanish(name):
    A = cartan(name)
    L = serre_quotient(A, 6)
    for i, j in product(range(A.rank), repeat=2):
        if i != j and 2 - A[i, j] <= L.N:
            assert L.evaluate_word((i,) * (1 - A[i, j]) + (j,)) == {}


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A2t", "A3t"])
def test_jacobi_and_antisymmetry(name):
    L = serre_quotient(cartan(name), 8)
    assert L.check_antisymmetry()
    assert L.check_jacobi(8)


def test_free_lie_jacobi():
    assert free_lie(3, 5).check_jacobi()


def test_bracket_examples():
    A2 = serre_quotient(cartan("A2"), 4)
    e1, e2 = A2.e(0), A2.e(1)
    assert not bracket(e1, e1)
    assert not bracket(e1, bracket(e1, e2))
    F = free_lie(2, 4)
    y1, y2 = F.e(0), F.e(1)
    assert bracket(y1, bracket(y1, y2))


def test_bracket_flags_truncation():
    L = serre_quotient(cartan("A2t"), 2)
    x = bracket(L.e(0), L.e(1))
    assert not x.truncated
    y = bracket(L.e(2), x)
    assert not y and y.truncated


@given(st.data())
def test_bracket_bilinear_antisymmetric(data):
    L = serre_quotient(cartan("A2t"), 6)
    coeffs = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))

    def vec():
        ks = data.draw(st.lists(st.integers(0, L.dim - 1), max_size=4))
        return L.element({k: data.draw(coeffs) for k in ks})

    x, y, z = vec(), vec(), vec()
    c = data.draw(coeffs)
    assert bracket(x + c * y, z) == bracket(x, z) + c * bracket(y, z)
    assert bracket(x, y) == -bracket(y, x)


def test_root_multiplicity_examples():
    assert root_multiplicity(cartan("A2t"), (0, 1, 0)) == 1
    assert root_multiplicity(validate_gcm([[2, -3], [-1, 2]]), (3, 2)) == 1
    assert root_multiplicity(cartan("A2t"), (2, 2, 2)) == 2
    assert root_multiplicity(cartan("A2"), (2, 1)) == 0


def test_peterson_oracle_examples():
    assert peterson_multiplicity_oracle(cartan("A2"), (1, 0)) == 1
    assert peterson_multiplicity_oracle(cartan("A2"), (1, 1)) == 1
    assert peterson_multiplicity_oracle(cartan("A2t"), (1, 1, 1)) == 2
    with pytest.raises(ValueError):
        peterson_multiplicity_oracle(validate_gcm([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]]), (1, 1, 1))


@pytest.mark.parametrize("name,N", [("A2", 8), ("B2", 8), ("G2", 8), ("A2t", 8), ("A3t", 6)])
def test_multiplicities_match_oracle(name, N):
    A = cartan(name)
    L = serre_quotient(A, N)
    for h in range(1, N + 1):
        for d in multidegrees(A.rank, h):
            assert L.dim_at(d) == peterson_multiplicity_oracle(A, d), d


def test_a2_tilde_imaginary_multiplicities():
    A = cartan("A2t")
    for k in (1, 2, 3):
        assert root_multiplicity(A, (k, k, k), 9) == 2


@pytest.mark.parametrize("relators,matrix", PRESENTATIONS)
def test_simpler_presentations_match_serre(relators, matrix):
    Q = quotient_by_relators(2, relators, 8)
    S = serre_quotient(validate_gcm(matrix), 8)
    assert {d: len(v) for d, v in Q.by_degree.items()} == {d: len(v) for d, v in S.by_degree.items()}


def test_presentation_dims():
    assert [quotient_by_relators(2, r, 8).dim for r, _ in PRESENTATIONS] == [2, 3, 4]


def test_g2_like_relator_quotient():
    H = quotient_by_relators(2, G2_LIKE_RELATORS, 8)
    assert H.dim == 7
    assert H.nilpotency_class() == 5
    assert H.check_jacobi()
    # [y_i, [y_i, y_j]] survives in the relator quotient but dies in n+
    assert H.evaluate_word((0, 0, 1))
    assert not serre_quotient(G2_LONG_FIRST, 8).evaluate_word((0, 0, 1))


def test_relator_validation():
    with pytest.raises(RelatorError):
        quotient_by_relators(2, [[(1, (0, 1)), (1, (0, 0, 1))]], 4)
    with pytest.raises(RelatorError):
        quotient_by_relators(2, [(0, 2)], 4)


def test_dims_tsv_header():
    tsv = serre_quotient(cartan("A2"), 3).dims_tsv()
    assert tsv.splitlines()[0] == "multidegree\theight\tdim"
    assert "1,1\t2\t1" in tsv


def test_basis_is_left_normed():
    L = serre_quotient(cartan("A2t"), 6)
    assert L.left_normed
    for b in L.basis:
        v = L.evaluate_word(b.word)
        assert v == {b.index: 1}
