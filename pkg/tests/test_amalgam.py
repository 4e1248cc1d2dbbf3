import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmsgroups.amalgam import (
    AdditiveFactor,
    AmalgamSpec,
    LieModel,
    PreconditionError,
    TransversalError,
    a2tilde_edge_amalgam,
    amalgam_reduce,
    cyclically_reduce,
    edge_letters_to_word,
    expand,
    free_reduce,
    heisenberg_transversal,
    r_n_bound,
    rank2_transversal,
    standard_models,
    verify_lcs_bound_lie,
)
from kmsgroups.rank2 import Rank2Element
from kmsgroups.rootsystem import cartan
from kmsgroups.truncated import truncated_group

from .oracles import heisenberg, heisenberg_coords

F = Fraction
A2T = cartan("A2t")
small = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 2))
free_letters = st.lists(st.tuples(st.sampled_from("ab"), small), max_size=14)


def comm(u, v, inv):
    return inv(u) + inv(v) + u + v


def inv_free(u):
    return [(f, -x) for f, x in reversed(u)]


def inv_r2(u):
    return [(f, x.inverse()) for f, x in reversed(u)]


def e(*coords):
    return Rank2Element.from_coords("A2", list(coords))


# -- free products -------------------------------------------------------------------


def test_free_reduce_examples():
    a, b = [("a", F(1))], [("b", F(1))]
    assert len(free_reduce(a + inv_free(a))) == 0
    assert len(free_reduce(comm(a, b, inv_free))) == 4
    w = free_reduce(comm(a, comm(a, b, inv_free), inv_free))
    assert len(w) == 8
    assert [f for f, _ in w.syllables] == ["a", "b", "a", "b"] * 2
    assert len(free_reduce([])) == 0


@given(free_letters, free_letters)
def test_free_reduce_is_confluent(u, v):
    whole = free_reduce(u + v)
    assert free_reduce(list(free_reduce(u).syllables) + v) == whole
    assert free_reduce(u + list(free_reduce(v).syllables)) == whole


@given(free_letters)
def test_free_reduce_output_is_reduced(u):
    w = free_reduce(u).syllables
    assert all(x for _, x in w)
    assert all(w[k][0] != w[k + 1][0] for k in range(len(w) - 1))


@given(free_letters, free_letters)
def test_cyclic_length_is_a_conjugacy_invariant(w, g):
    n = len(cyclically_reduce(w))
    assert len(cyclically_reduce(inv_free(g) + w + g)) == n
    assert n <= len(free_reduce(w))
    assert n == 0 or n == 1 or n % 2 == 0


def test_conjugation_can_change_length_parity():
    # a (ab) a^-1 = a^2 b a^-1: plain syllable length goes from 2 to 3
    w = [("a", F(1)), ("b", F(1))]
    g = [("a", F(-1))]
    assert len(free_reduce(w)) == 2
    assert len(free_reduce(inv_free(g) + w + g)) == 3
    assert len(cyclically_reduce(inv_free(g) + w + g)) == 2


# -- transversals --------------------------------------------------------------------


def test_heisenberg_transversal_examples():
    split, embed = heisenberg_transversal()
    rep, c = split(e(0, 5, 0))
    assert rep.is_identity() and c == 5
    rep, c = split(e(2, 0, 0))
    assert rep == e(2, 0, 0) and c == 0


@given(small, small)
def test_heisenberg_transversal_against_matrices(a, b):
    split, embed = heisenberg_transversal()
    g = Rank2Element.identity("A2").times_letter((0, 1), b).times_letter((1, 0), a)
    rep, c = split(g)
    assert c == b
    assert rep.coord((0, 1)) == 0
    # x_beta(b) x_alpha(a) x_beta(-b) as a matrix, read back in coordinates
    M = heisenberg(0, b, 0) * heisenberg(a, 0, 0) * heisenberg(0, -b, 0)
    assert rep.coords == heisenberg_coords(M)
    assert rep * embed(c) == g


def test_transversal_needs_simple_root():
    with pytest.raises(TransversalError):
        rank2_transversal("A2", (1, 1))


def test_bad_transversal_is_reported():
    spec = a2tilde_edge_amalgam()
    broken = AmalgamSpec(spec.factors, spec.c_factor, {**spec.split, "U12": lambda g: (g, F(1))}, spec.embed_c)
    with pytest.raises(TransversalError):
        amalgam_reduce(broken, [("U12", e(1, 0, 0))])


# -- the edge amalgam U12 *_U2 U23 ------------------------------------------------------


def test_c_letter_is_absorbed_by_the_other_factor():
    spec = a2tilde_edge_amalgam()
    # x2(1) x3(1): the C-letter from U12 is pushed into the U23 letter
    w = amalgam_reduce(spec, [("U12", e(0, 1, 0)), ("U23", e(0, 1, 0))])
    assert len(w) == 1 and w.syllables[0][0] == "U23"
    assert w.c_part == 1
    w = amalgam_reduce(spec, [("U12", e(0, 1, 0)), ("U23", e(1, 0, 0))])
    assert len(w) == 0 and w.c_part == 2
    assert amalgam_reduce(spec, []).is_identity()
    w = amalgam_reduce(spec, [("U12", e(0, 1, 0)), ("U23", e(-1, 0, 0))])
    assert w.is_identity()


def test_witness_shape_reduces_to_length_eight():
    spec = a2tilde_edge_amalgam()
    a = [("U12", e(0, 0, 1))]
    b = [("U23", e(0, 0, 1))]
    w = amalgam_reduce(spec, comm(a, comm(a, b, inv_r2), inv_r2))
    assert len(w) == 8
    assert not w.is_identity()


def _random_edge_letters(rng, n):
    out = []
    for _ in range(n):
        fid = rng.choice(["U12", "U23"])
        out.append((fid, e(*(F(rng.randint(-2, 2)) for _ in range(3)))))
    return out


def test_amalgam_reduce_is_confluent():
    spec = a2tilde_edge_amalgam()
    rng = random.Random(5)
    for _ in range(200):
        u, v = _random_edge_letters(rng, rng.randint(0, 6)), _random_edge_letters(rng, rng.randint(0, 6))
        whole = amalgam_reduce(spec, u + v)
        assert amalgam_reduce(spec, expand(spec, amalgam_reduce(spec, u)) + v) == whole
        assert amalgam_reduce(spec, u + expand(spec, amalgam_reduce(spec, v))) == whole


def test_reduced_words_embed_consistently():
    """Reduction does not change the image in the truncated group."""
    spec = a2tilde_edge_amalgam()
    G = truncated_group(A2T, 6)
    rng = random.Random(6)
    for _ in range(60):
        u = _random_edge_letters(rng, rng.randint(0, 7))
        r = amalgam_reduce(spec, u)
        assert G.embed_word(edge_letters_to_word(expand(spec, r), A2T)) == G.embed_word(edge_letters_to_word(u, A2T))
        if r.is_identity():
            assert G.embed_word(edge_letters_to_word(u, A2T)).is_identity()


def test_random_reduced_words_survive_in_a_nilpotent_quotient():
    spec = a2tilde_edge_amalgam()
    G = truncated_group(A2T, 10)
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        r = amalgam_reduce(spec, _random_edge_letters(rng, rng.randint(1, 8)))
        if r.is_identity():
            continue
        assert not G.embed_word(edge_letters_to_word(expand(spec, r), A2T)).is_identity()
        checked += 1


# -- lower central series bounds ---------------------------------------------------------


@pytest.mark.parametrize("N,n,value", [(2, 1, 3), (3, 2, 9), (2, 3, 10), (5, 1, 6)])
def test_r_n_values(N, n, value):
    assert r_n_bound(N, n) == value


@given(st.integers(2, 30), st.integers(1, 30))
def test_r_n_formula(N, n):
    assert r_n_bound(N, n) == 1 + n + (N - 1) * n * (n + 1) // 2
    assert r_n_bound(N, 1) == N + 1


def test_r_n_rejects_small_arguments():
    with pytest.raises(ValueError):
        r_n_bound(1, 1)
    with pytest.raises(ValueError):
        r_n_bound(2, 0)


@pytest.mark.parametrize("model,N", standard_models(), ids=lambda x: getattr(x, "name", str(x)))
def test_lcs_bound_on_models(model, N):
    assert verify_lcs_bound_lie(model, N, 4)


def test_lcs_bound_needs_N_at_least_two():
    model, _ = standard_models()[0]
    with pytest.raises(PreconditionError):
        verify_lcs_bound_lie(model, 1, 3)


def test_abelian_model_for_all_parameters():
    def zero(u, v):
        return {}

    def shift(v):
        return {k + 1: c for k, c in v.items() if k + 1 < 3}

    M = LieModel([{k: F(1)} for k in range(3)], zero, [lambda v: {}], "abelian")
    for N in (2, 3, 4, 5):
        assert verify_lcs_bound_lie(M, N, 4)
    # a nilpotent derivation of order 3 needs N >= 3 for c^(N)(h) to vanish
    M = LieModel([{k: F(1)} for k in range(3)], zero, [shift], "abelian, shifted")
    with pytest.raises(PreconditionError):
        verify_lcs_bound_lie(M, 2, 4)
    for N in (3, 4, 5):
        assert verify_lcs_bound_lie(M, N, 4)


def test_additive_factor():
    A = AdditiveFactor("Q")
    assert A.mul(F(1), A.inv(F(1))) == 0 and A.is_identity(A.identity())
