"""Slow, direct implementations used to cross-check the fast ones.

Nothing here reuses the nucleus machinery: congruences are plain sets of
pairs or partitions, and every operation is evaluated from its definition
by scanning.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Iterator

from .order import Frame, FrameHom, hom_violation

Relation = frozenset  # of (x, y) pairs


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings: block label of each element."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(labels)
            return
        for b in range(used + 1):
            labels[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(1, 1)


def is_compatible_partition(F: Frame, block: tuple[int, ...]) -> bool:
    n = F.size
    for x in range(n):
        for y in range(x + 1, n):
            if block[x] != block[y]:
                continue
            for z in range(n):
                if block[F.meet(x, z)] != block[F.meet(y, z)] or block[F.join(x, z)] != block[F.join(y, z)]:
                    return False
    return True


def all_congruence_partitions(F: Frame) -> list[tuple[int, ...]]:
    """Every partition of the elements closed under meet and join."""
    return [p for p in partitions(F.size) if is_compatible_partition(F, p)]


def partition_relation(block: tuple[int, ...]) -> Relation:
    n = len(block)
    return frozenset((x, y) for x in range(n) for y in range(n) if block[x] == block[y])


def relation_nu(F: Frame, rel: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Largest related element for each element, found by scanning."""
    rel = set(rel)
    out = []
    for x in range(F.size):
        cls = [y for y in range(F.size) if (x, y) in rel]
        best = [y for y in cls if all(F.le(z, y) for z in cls)]
        if len(best) != 1:
            raise AssertionError(f"class of {x} has no greatest element")
        out.append(best[0])
    return tuple(out)


def partition_nu(F: Frame, block: tuple[int, ...]) -> tuple[int, ...]:
    return relation_nu(F, partition_relation(block))


def generated_relation(F: Frame, pairs: Iterable[tuple[int, int]]) -> Relation:
    """Least congruence relation containing ``pairs``, by naive saturation."""
    n = F.size
    rel = {(x, x) for x in range(n)}
    for a, b in pairs:
        rel.add((a, b))
        rel.add((b, a))
    changed = True
    while changed:
        changed = False
        new = set()
        for x, y in rel:
            new.add((y, x))
            for z in range(n):
                new.add((F.meet(x, z), F.meet(y, z)))
                new.add((F.join(x, z), F.join(y, z)))
        for x, y in list(rel):
            for y2, w in list(rel):
                if y == y2:
                    new.add((x, w))
        if not new <= rel:
            rel |= new
            changed = True
    return frozenset(rel)


def generated_nu(F: Frame, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    return relation_nu(F, generated_relation(F, pairs))


def least_congruence_containing(F: Frame, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Same as ``generated_nu`` but by intersecting every congruence partition that contains the pairs."""
    pairs = list(pairs)
    n = F.size
    meet = None
    for p in all_congruence_partitions(F):
        if all(p[a] == p[b] for a, b in pairs):
            rel = partition_relation(p)
            meet = rel if meet is None else meet & rel
    return relation_nu(F, meet if meet is not None else {(x, x) for x in range(n)})


# ---------------------------------------------------------------------------
# Quantified formulas
# ---------------------------------------------------------------------------


def formula_nu(F: Frame, related) -> tuple[int, ...]:
    n = F.size
    return relation_nu(F, {(x, y) for x in range(n) for y in range(n) if related(x, y)})


def nabla_formula(F: Frame, a: int) -> tuple[int, ...]:
    return formula_nu(F, lambda x, y: F.join(x, a) == F.join(y, a))


def delta_formula(F: Frame, a: int) -> tuple[int, ...]:
    return formula_nu(F, lambda x, y: F.meet(x, a) == F.meet(y, a))


def dense_formula(F: Frame) -> tuple[int, ...]:
    n = F.size
    return formula_nu(F, lambda a, b: all((F.meet(a, x) == F.bottom) == (F.meet(b, x) == F.bottom) for x in range(n)))


def clear_formula(F: Frame, a: int) -> tuple[int, ...]:
    n = F.size
    return formula_nu(F, lambda x, y: all(F.le(F.meet(x, z), a) == F.le(F.meet(y, z), a) for z in range(n)))


def prime_ideal_formula(F: Frame, p: int) -> tuple[int, ...]:
    return formula_nu(F, lambda x, y: F.le(x, p) == F.le(y, p))


# ---------------------------------------------------------------------------
# Element-level definitions
# ---------------------------------------------------------------------------


def arrow_brute(F: Frame, a: int, b: int) -> int:
    cands = [c for c in range(F.size) if F.le(F.meet(a, c), b)]
    return next(c for c in cands if all(F.le(d, c) for d in cands))


def pseudocomplement_brute(F: Frame, a: int) -> int:
    return arrow_brute(F, a, F.bottom)


def complemented_brute(F: Frame) -> set[int]:
    n = F.size
    return {a for a in range(n) if any(F.meet(a, b) == F.bottom and F.join(a, b) == F.top for b in range(n))}


def primes_brute(F: Frame) -> set[int]:
    n = F.size
    return {p for p in range(n) if p != F.top and all(
        F.le(a, p) or F.le(b, p) for a in range(n) for b in range(n) if F.le(F.meet(a, b), p))}


def join_irreducibles_brute(F: Frame) -> set[int]:
    n = F.size
    out = set()
    for x in range(n):
        if x == F.bottom:
            continue
        below = [y for y in range(n) if F.le(y, x) and y != x]
        if F.join_all(below) != x:
            out.add(x)
    return out


# ---------------------------------------------------------------------------
# Homs, posets, lattices
# ---------------------------------------------------------------------------


def homs_brute(F: Frame, G: Frame) -> list[tuple[int, ...]]:
    """Every map F -> G that is a frame hom, by trying all |G|^|F| maps."""
    out = []
    for m in product(range(G.size), repeat=F.size):
        if hom_violation(FrameHom(F, G, m)) is None:
            out.append(m)
    return out


def partial_orders_brute(n: int) -> list[tuple[tuple[bool, ...], ...]]:
    """All partial order matrices on ``n`` labelled points."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for choice in product((False, True), repeat=len(off)):
        m = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), v in zip(off, choice):
            m[i][j] = v
        ok = all(not (m[i][j] and m[j][i]) for i, j in off)
        ok = ok and all(not m[i][j] or not m[j][k] or m[i][k]
                        for i in range(n) for j in range(n) for k in range(n))
        if ok:
            out.append(tuple(tuple(r) for r in m))
    return out


def iso_classes_brute(matrices: list) -> list:
    """Representatives up to relabelling, by trying every permutation."""
    seen = set()
    reps = []
    for m in matrices:
        n = len(m)
        key = min(tuple(m[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))
        if key not in seen:
            seen.add(key)
            reps.append(m)
    return reps


def is_distributive_lattice_brute(m) -> bool:
    n = len(m)
    if n == 0:
        return False

    def bound(i, j, upper):
        if upper:
            cands = [k for k in range(n) if m[i][k] and m[j][k]]
            best = [k for k in cands if all(m[k][c] for c in cands)]
        else:
            cands = [k for k in range(n) if m[k][i] and m[k][j]]
            best = [k for k in cands if all(m[c][k] for c in cands)]
        return best[0] if best else None

    meet = [[bound(i, j, False) for j in range(n)] for i in range(n)]
    join = [[bound(i, j, True) for j in range(n)] for i in range(n)]
    if any(v is None for row in meet + join for v in row):
        return False
    return all(meet[x][join[y][z]] == join[meet[x][y]][meet[x][z]]
               for x in range(n) for y in range(n) for z in range(n))


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------


def td_brute(points: int, opens: list[int]) -> bool:
    s = set(opens)
    return all(any((u >> x) & 1 and (u & ~(1 << x)) in s for u in opens) for x in range(points))


def subspace_relation(opens: list[int], A: int) -> Relation:
    return frozenset((i, j) for i, u in enumerate(opens) for j, v in enumerate(opens) if u & A == v & A)


def subspace_nu(opens: list[int], A: int) -> tuple[int, ...]:
    """For each open, the index of the largest open with the same trace on ``A``."""
    out = []
    for u in opens:
        same = [v for v in opens if v & A == u & A]
        union = 0
        for v in same:
            union |= v
        out.append(opens.index(union))
    return tuple(out)
