import math
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmsgroups.rootsystem import (
    RANK2_TAGS,
    GCMError,
    Rank2Type,
    cartan,
    is_r_spherical,
    is_spherical,
    load_gcm,
    m_ij,
    positive_roots_rank2,
    rank2_roles,
    real_roots_up_to_height,
    simple_reflection,
    validate_gcm,
)

A2T = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]


def test_validate_accepts_cartan_matrices():
    validate_gcm([[2, -1], [-1, 2]])
    validate_gcm(A2T)


@pytest.mark.parametrize(
    "rows",
    [
        [[2, -1], [0, 2]],  # zero pattern
        [[3, -1], [-1, 2]],  # diagonal
        [[2, 1], [1, 2]],  # positive entry
        [[2, -1, 0], [-1, 2]],  # ragged
        [],
    ],
)
def test_validate_rejects(rows):
    with pytest.raises(GCMError):
        validate_gcm(rows)


def test_load_gcm(tmp_path):
    p = tmp_path / "a.json"
    p.write_text('{"matrix": [[2,-1],[-3,2]]}')
    assert load_gcm(p).matrix == ((2, -1), (-3, 2))
    p.write_text("[[2]]")
    with pytest.raises(GCMError):
        load_gcm(p)


def test_sphericity_examples():
    assert is_spherical(validate_gcm([[2, -1], [-3, 2]]))
    assert not is_spherical(validate_gcm(A2T))
    assert not is_spherical(validate_gcm([[2, -2], [-2, 2]]))
    assert is_spherical(cartan("A3"))


def test_r_sphericity_examples():
    A = validate_gcm(A2T)
    assert is_r_spherical(A, 2)
    assert not is_r_spherical(A, 3)
    for tag in ("A2", "B2", "G2", "A1xA1"):
        assert is_r_spherical(cartan(tag), 3)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(0, 6) for b in range(0, 6) if (a == 0) == (b == 0)])
def test_minor_criterion_agrees_with_product_rule(a, b):
    A = validate_gcm([[2, -a], [-b, 2]])
    assert is_spherical(A) == (a * b <= 3)


def test_m_ij_rule():
    assert m_ij(validate_gcm([[2, 0], [0, 2]]), 0, 1) == 2
    assert m_ij(validate_gcm([[2, -1], [-1, 2]]), 0, 1) == 3
    assert m_ij(validate_gcm([[2, -2], [-1, 2]]), 0, 1) == 4
    assert m_ij(validate_gcm([[2, -1], [-3, 2]]), 1, 0) == 6
    assert m_ij(validate_gcm([[2, -2], [-2, 2]]), 0, 1) == math.inf
    with pytest.raises(ValueError):
        m_ij(cartan("A2"), 1, 1)


def test_positive_root_lists():
    a, b = (1, 0), (0, 1)
    assert positive_roots_rank2(Rank2Type("A1xA1")) == [a, b]
    assert positive_roots_rank2(Rank2Type("A2")) == [a, b, (1, 1)]
    assert positive_roots_rank2(Rank2Type("B2")) == [a, b, (1, 1), (2, 1)]
    assert positive_roots_rank2(Rank2Type("G2")) == [a, b, (1, 1), (2, 1), (3, 1), (3, 2)]


def test_rank2_type_rejects_unknown():
    with pytest.raises(ValueError):
        Rank2Type("A3")


def test_short_root_roles():
    # alpha is the short root: for (a_ij, a_ji) = (-1, -2) index j is short
    t, a, b = rank2_roles(validate_gcm([[2, -1], [-2, 2]]), 0, 1)
    assert (t.tag, a, b) == ("B2", 1, 0)
    t, a, b = rank2_roles(validate_gcm([[2, -3], [-1, 2]]), 0, 1)
    assert (t.tag, a, b) == ("G2", 0, 1)


def test_simple_reflection_examples():
    A = validate_gcm(A2T)
    assert simple_reflection(A, 2, (1, 0, 0)) == (1, 0, 1)
    assert simple_reflection(A, 1, (0, 1, 0)) == (0, -1, 0)


@given(st.sampled_from(["A2", "B2", "G2", "A3", "A2t", "A3t"]), st.data())
def test_simple_reflection_is_involution(name, data):
    A = cartan(name)
    alpha = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=A.rank, max_size=A.rank)))
    i = data.draw(st.integers(0, A.rank - 1))
    assert simple_reflection(A, i, simple_reflection(A, i, alpha)) == alpha


def test_real_roots_examples():
    assert real_roots_up_to_height(cartan("A2"), 2) == {(1, 0), (0, 1), (1, 1)}
    assert real_roots_up_to_height(validate_gcm(A2T), 2) == {
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)
    }
    for name in ("A2t", "A3", "G2"):
        A = cartan(name)
        assert real_roots_up_to_height(A, 1) == {A.simple_root(i) for i in range(A.rank)}


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A2t", "A3t", "A3"])
def test_real_roots_closed_under_reflections(name):
    A, H = cartan(name), 6
    R = real_roots_up_to_height(A, H)
    for alpha, i in product(R, range(A.rank)):
        beta = simple_reflection(A, i, alpha)
        if all(c >= 0 for c in beta) and 0 < sum(beta) <= H:
            assert beta in R


@pytest.mark.parametrize("tag", [t for t in RANK2_TAGS])
def test_rank2_real_roots_match_lists(tag):
    from kmsgroups.truncated import CANONICAL_RANK2

    A = validate_gcm(CANONICAL_RANK2[tag])
    assert real_roots_up_to_height(A, 5) == set(positive_roots_rank2(Rank2Type(tag)))
