import pytest

from framecalc import assembly as asm
from framecalc import biframe as bf
from framecalc import congruence as cg
from framecalc import oracles
from framecalc import spatial as sp
from framecalc.catalog import (
    boolean,
    chain,
    corpus_lattices,
    discrete_space,
    enumerate_spaces_upto,
    indiscrete_space,
    sierpinski_space,
)
from framecalc.errors import NotASpace, NotT0
from framecalc.order import bits, frame_from_covers, is_isomorphic, iter_homs

THREE = chain(3)
SIERPINSKI = sierpinski_space()
SPACES = enumerate_spaces_upto(4)
CORPUS = [F for F in corpus_lattices() if F.size <= 10]


def ids(items):
    return [x.name for x in items]


def chain_space(points):
    # opens: the empty set and each initial segment
    return sp.space_from_opens(points, [(1 << k) - 1 for k in range(points + 1)], "chain")


# ---------------------------------------------------------------------------
# spaces and frames of opens
# ---------------------------------------------------------------------------


def test_opens_must_form_a_topology():
    with pytest.raises(NotASpace):
        sp.space_from_opens(2, [0, 1, 2])
    with pytest.raises(NotASpace):
        sp.space_from_opens(2, [1, 3])


def test_frames_of_opens():
    assert is_isomorphic(sp.omega(SIERPINSKI), THREE)
    assert is_isomorphic(sp.omega(discrete_space(2)), boolean(2))
    assert is_isomorphic(sp.omega(indiscrete_space(2)), chain(2))


def test_subbasis_generation():
    X = sp.space_from_subbasis(3, [0b001, 0b011])
    assert set(X.opens) == {0, 0b001, 0b011, 0b111}


def test_spectra():
    S = sp.sigma(THREE)
    assert S.space.points == 2 and set(S.prime_of_point) == {0, 1}
    assert is_isomorphic(sp.omega(S.space), THREE)
    assert sp.sigma(boolean(2)).space.opens == discrete_space(2).opens
    assert sp.sigma(frame_from_covers(1, [])).space.points == 0


@pytest.mark.parametrize("F", CORPUS, ids=ids(CORPUS))
def test_spectrum_unit_is_an_isomorphism(F):
    unit = sp.spectrum_unit(F)
    assert len(set(unit.map)) == F.size == unit.target.size


def test_separation_axioms_on_small_spaces():
    assert sp.is_sober(SIERPINSKI) and sp.is_T0(SIERPINSKI) and sp.is_TD(SIERPINSKI)
    assert not sp.is_T0(indiscrete_space(2))


@pytest.mark.parametrize("X", SPACES, ids=ids(SPACES))
def test_finite_spaces_are_sober_iff_T0(X):
    assert sp.is_sober(X) == sp.is_T0(X)
    Y, sob = sp.sobrification(X)
    assert sp.is_T0(Y) and sp.is_sober(Y)


@pytest.mark.parametrize("X", SPACES, ids=ids(SPACES))
def test_TD_matches_brute_force_and_subspace_separation(X):
    assert sp.is_TD(X) == oracles.td_brute(X.points, list(X.opens))
    assert sp.td_congruence_lemma_check(X)


def test_TD_examples():
    assert sp.td_separation(SIERPINSKI) and sp.is_TD(SIERPINSKI)
    indiscrete = indiscrete_space(2)
    assert not sp.td_separation(indiscrete) and not sp.is_TD(indiscrete)
    assert sp.td_separation(discrete_space(3))


# ---------------------------------------------------------------------------
# subspace congruences
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("X", SPACES, ids=ids(SPACES))
def test_subspace_congruences(X):
    O, es = sp.subspace_congruences(X)
    for A, E in enumerate(es):
        assert E.nu == oracles.subspace_nu(list(X.opens), A)
    assert sp.union_meet_violation(X) is None


def test_intersection_can_fail_on_two_points():
    X = indiscrete_space(2)
    a, b = sp.intersection_join_counterexample(X)
    O, es = sp.subspace_congruences(X)
    assert es[a & b] != cg.join(es[a], es[b])


def test_intersection_holds_on_sierpinski_space():
    assert sp.intersection_join_counterexample(SIERPINSKI) is None


# ---------------------------------------------------------------------------
# Skula
# ---------------------------------------------------------------------------


def test_skula_of_sierpinski_space_is_discrete():
    assert sp.skula_space(SIERPINSKI).opens == discrete_space(2).opens
    B = sp.skula_biframe(SIERPINSKI)
    assert B.total.size == 4


def test_skula_of_discrete_and_chain_spaces():
    D = discrete_space(3)
    assert sp.skula_space(D).opens == D.opens
    B = sp.skula_biframe(chain_space(3))
    assert B.total.size == 8 and bf.is_strictly_zero_dimensional(B)


def test_skula_needs_T0_unless_reflecting():
    with pytest.raises(NotT0):
        sp.skula_biframe(indiscrete_space(2))
    # the T0 reflection is a single point
    assert sp.skula_biframe(indiscrete_space(2), reflect=True).total.size == 2


@pytest.mark.parametrize("X", [X for X in SPACES if sp.is_T0(X)], ids=ids([X for X in SPACES if sp.is_T0(X)]))
def test_skula_biframes_are_congruential(X):
    B = sp.skula_biframe(X)
    assert bf.is_strictly_zero_dimensional(B)
    assert bf.congruential_routes(B) == (True, True)


def test_skula_iso_examples():
    assert sp.skula_iso_check(THREE)
    assert sp.skula_iso_check(boolean(2))
    assert sp.skula_iso_check(frame_from_covers(1, []))


@pytest.mark.parametrize("F", CORPUS, ids=ids(CORPUS))
def test_skula_iso_everywhere(F):
    assert sp.skula_iso_check(F)


def test_skula_naturality_on_small_pairs():
    small = [F for F in corpus_lattices() if F.size <= 4]
    for L in small:
        for M in small:
            A, B = asm.assemble(L), asm.assemble(M)
            for f in iter_homs(L, M):
                assert sp.skula_naturality_check(f, A, B)


# ---------------------------------------------------------------------------
# prime and spatial congruences
# ---------------------------------------------------------------------------


def test_primes_of_congruence_frame_of_three_chain():
    X = asm.assemble(THREE)
    expected = {X.index[cg.delta(THREE, 1)], X.index[cg.nabla(THREE, 1)]}
    assert set(bits(sp.prime_congruences(X))) == expected
    assert sp.clear_primes(X) == sp.prime_congruences(X)


def test_primes_of_boolean_frames_correspond():
    for k in range(4):
        F = boolean(k)
        assert bin(sp.prime_congruences(asm.assemble(F))).count("1") == bin(F.primes).count("1")


@pytest.mark.parametrize("F", CORPUS, ids=ids(CORPUS))
def test_every_congruence_is_its_own_spatial_reflection(F):
    X = asm.assemble(F)
    assert sp.prime_congruences(X) == sp.clear_primes(X)
    sp.spatial_congruences(X)
    for C in X.congruences:
        assert sp.spatial_reflection_of_quotient(X, C) == C
