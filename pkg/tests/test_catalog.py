import random
from itertools import combinations, permutations

import pytest

from framecalc import oracles
from framecalc.catalog import (
    CORPUS_HASH,
    NAMED_LATTICES,
    boolean,
    canonical_form,
    chain,
    corpus_hash,
    corpus_lattices,
    corpus_spaces,
    enumerate_distributive_lattices,
    enumerate_posets,
    enumerate_spaces,
    free_frame,
    grid,
    lattice_canonical_form,
    named,
    poset_canonical_form,
)
from framecalc.errors import NotDistributive, UnknownName
from framecalc.order import frame_from_poset, is_isomorphic, poset_from_up
from framecalc.spatial import is_T0


def brute_topology_count(points):
    """Topologies on ``points`` points up to homeomorphism, by scanning all families."""
    full = (1 << points) - 1
    middle = [s for s in range(1, full)]
    seen = set()
    for r in range(len(middle) + 1):
        for extra in combinations(middle, r):
            opens = {0, full, *extra}
            if any(a | b not in opens or a & b not in opens for a in opens for b in opens):
                continue
            key = min(tuple(sorted(_relabel(u, perm) for u in opens)) for perm in permutations(range(points)))
            seen.add(key)
    return len(seen)


def _relabel(mask, perm):
    out = 0
    for i, j in enumerate(perm):
        if (mask >> i) & 1:
            out |= 1 << j
    return out


@pytest.mark.parametrize("n", range(5))
def test_poset_counts_match_brute_force(n):
    assert len(enumerate_posets(n)) == len(oracles.iso_classes_brute(oracles.partial_orders_brute(n)))


def test_poset_counts_beyond_brute_force():
    assert [len(enumerate_posets(n)) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]


@pytest.mark.parametrize("n", range(4))
def test_space_counts_match_brute_force(n):
    assert len(enumerate_spaces(n)) == brute_topology_count(n)


def test_space_counts_up_to_six_points():
    assert [len(enumerate_spaces(n)) for n in range(7)] == [1, 1, 3, 9, 33, 139, 718]


def test_T0_spaces_are_posets():
    for n in range(6):
        assert sum(1 for X in enumerate_spaces(n) if is_T0(X)) == len(enumerate_posets(n))


def test_lattices_from_small_posets():
    found = enumerate_distributive_lattices(max_poset_size=2)
    assert sorted(F.size for F in found) == [1, 2, 3, 4]
    assert any(is_isomorphic(F, boolean(2)) for F in found)


@pytest.mark.parametrize("n", range(5))
def test_distributive_lattice_counts_match_brute_force(n):
    brute = [m for m in oracles.iso_classes_brute(oracles.partial_orders_brute(n))
             if oracles.is_distributive_lattice_brute(m)]
    ours = [F for F in enumerate_distributive_lattices(max_poset_size=4) if F.size == n]
    assert len(ours) == len(brute)


def test_no_two_corpus_lattices_are_isomorphic():
    forms = [lattice_canonical_form(F) for F in corpus_lattices()]
    assert len(set(forms)) == len(forms)
    for F, G in combinations([F for F in corpus_lattices() if F.size <= 8], 2):
        if F.size == G.size:
            assert not is_isomorphic(F, G)


def test_canonical_form_ignores_relabelling():
    rng = random.Random(7)
    for p in enumerate_posets(5):
        perm = list(range(p.size))
        rng.shuffle(perm)
        up = [0] * p.size
        for i in range(p.size):
            up[perm[i]] = _relabel(p.up[i], perm)
        assert poset_canonical_form(poset_from_up(up)) == poset_canonical_form(p)


def test_canonical_form_separates_posets():
    forms = {canonical_form(p.up) for p in enumerate_posets(5)}
    assert len(forms) == 63


def test_named_entries():
    assert is_isomorphic(named("chain(3)").payload, chain(3))
    assert is_isomorphic(named("boolean(2)").payload, boolean(2))
    assert is_isomorphic(named("free_frame(1)").payload, chain(3))
    assert is_isomorphic(named("grid(2,2)").payload, boolean(2))
    assert named("sierpinski_space").payload.points == 2
    for name in NAMED_LATTICES:
        assert named(name).kind == "lattice"


def test_negative_entries_are_tagged_and_rejected():
    for name in ("diamond_M3", "pentagon_N5"):
        entry = named(name)
        assert entry.expect_reject
        with pytest.raises(NotDistributive):
            frame_from_poset(entry.payload)


@pytest.mark.parametrize("name", ["chain(9)", "boolean(5)", "free_frame(3)", "nonsense"])
def test_unknown_names(name):
    with pytest.raises(UnknownName):
        named(name)


def test_grid_and_free_frame_sizes():
    assert grid(2, 3).size == 6
    assert free_frame(0).size == 2
    assert free_frame(2).size == 6


def test_corpus_is_pinned():
    assert corpus_hash() == CORPUS_HASH
    assert len(corpus_lattices()) == 28
    assert max(F.size for F in corpus_lattices()) == 16
    assert len(corpus_spaces()) == sum(len(enumerate_spaces(n)) for n in range(7))
