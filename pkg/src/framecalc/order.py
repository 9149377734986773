"""Finite posets, frames and frame homomorphisms.

Elements are dense integer indices ``0..n-1``. Sets of elements are Python
ints used as bit-sets, and the order is stored twice as bit-set rows:
``up[i]`` holds every ``j`` with ``i <= j`` and ``down[i]`` every ``j`` with
``j <= i``. In a lattice ``down[a] & down[b]`` is the principal downset of
``a ^ b``, which is how meets and joins are looked up.

A :class:`Frame` here is a finite distributive lattice. Finite joins are
all joins, so this is the same thing as a finite frame.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleDetected,
    IndexOutOfRange,
    NotAHom,
    NotALattice,
    NotDistributive,
    SizeBudgetExceeded,
    ValidationError,
)

MAX_DOWNSET_POINTS = 20


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(bits(mask))


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def set_key(s: int) -> tuple[int, int]:
    # Sort key for families of bit-sets: smaller sets first, ties by value.
    return (s.bit_count(), s)


# ---------------------------------------------------------------------------
# Posets
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Poset:
    size: int
    up: tuple[int, ...]
    down: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]

    def le(self, a: int, b: int) -> bool:
        return (self.up[a] >> b) & 1 == 1

    def lt(self, a: int, b: int) -> bool:
        return a != b and (self.up[a] >> b) & 1 == 1

    @property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        """The order as an n x n boolean matrix."""
        return tuple(tuple(self.le(a, b) for b in range(self.size)) for a in range(self.size))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # a < b implies down[a] is a proper subset of down[b]
        return tuple(sorted(range(self.size), key=lambda i: (self.down[i].bit_count(), i)))

    def dual(self) -> Poset:
        return Poset(self.size, self.down, self.up, tuple(sorted((b, a) for a, b in self.covers)))

    def induced(self, elements: Sequence[int]) -> Poset:
        """Subposet on ``elements``, reindexed in the given order."""
        pos = {e: i for i, e in enumerate(elements)}
        up = []
        for e in elements:
            row = 0
            for f in bits(self.up[e]):
                if f in pos:
                    row |= 1 << pos[f]
            up.append(row)
        return poset_from_up(up)


def _covers_from(up: Sequence[int], down: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out = []
    for i, row in enumerate(up):
        for j in bits(row & ~(1 << i)):
            if up[i] & down[j] == (1 << i) | (1 << j):
                out.append((i, j))
    return tuple(out)


def poset_from_up(up: Sequence[int]) -> Poset:
    """Build a poset from up-set rows, checking the partial order axioms."""
    n = len(up)
    full = (1 << n) - 1
    down = [0] * n
    for i, row in enumerate(up):
        if row & ~full:
            raise IndexOutOfRange(f"row {i} mentions an element outside 0..{n - 1}")
        if not (row >> i) & 1:
            raise ValidationError(f"order is not reflexive at {i}", witness=(i,))
        for j in bits(row):
            down[j] |= 1 << i
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if (up[j] >> i) & 1:
                raise CycleDetected(f"{i} <= {j} <= {i}", witness=(i, j))
            if up[j] & ~up[i]:
                k = next(bits(up[j] & ~up[i]))
                raise ValidationError(f"order is not transitive: {i} <= {j} <= {k}", witness=(i, j, k))
    return Poset(n, tuple(up), tuple(down), _covers_from(up, down))


def poset_from_leq(matrix: Sequence[Sequence[bool]]) -> Poset:
    return poset_from_up([mask_of(j for j, v in enumerate(row) if v) for row in matrix])


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    """Reflexive-transitive closure of a cover list.

    The returned ``covers`` is the transitive reduction, so redundant input
    pairs disappear.
    """
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"cover ({a}, {b}) outside 0..{n - 1}", witness=(a, b))
        if a == b:
            raise CycleDetected(f"cover ({a}, {a}) is a loop", witness=(a, b))
        succ[a].add(b)
    indeg = [0] * n
    for s in succ:
        for b in s:
            indeg[b] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in sorted(succ[a]):
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) < n:
        stuck = sorted(i for i in range(n) if indeg[i] > 0)
        raise CycleDetected(f"covers contain a cycle through {stuck}", witness=tuple(stuck))
    up = [1 << i for i in range(n)]
    for a in reversed(order):
        for b in succ[a]:
            up[a] |= up[b]
    down = [0] * n
    for i, row in enumerate(up):
        for j in bits(row):
            down[j] |= 1 << i
    return Poset(n, tuple(up), tuple(down), _covers_from(up, down))


# ---------------------------------------------------------------------------
# Frames
# ---------------------------------------------------------------------------


class Frame:
    """A finite distributive lattice with its Heyting structure.

    Build these with :func:`frame_from_poset` (or a constructor that calls
    it); the initialiser trusts its arguments.
    """

    def __init__(self, poset: Poset, meet: tuple[tuple[int, ...], ...], join: tuple[tuple[int, ...], ...],
                 bottom: int, top: int, labels: Sequence[str] | None = None,
                 carrier: Sequence | None = None, name: str = ""):
        n = poset.size
        self.poset = poset
        self.size = n
        self.meet_table = meet
        self.join_table = join
        self.bottom = bottom
        self.top = top
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.carrier = tuple(carrier) if carrier is not None else None
        self.name = name
        self.up = poset.up
        self.down = poset.down

        lower = [0] * n
        upper = [0] * n
        for a, b in poset.covers:
            lower[b] += 1
            upper[a] += 1
        self.join_irreducibles = mask_of(i for i in range(n) if lower[i] == 1)
        self.meet_irreducibles = mask_of(i for i in range(n) if upper[i] == 1)
        jm = self.join_irreducibles
        self.jset = tuple(d & jm for d in poset.down)
        self._jset_index = {s: i for i, s in enumerate(self.jset)}
        self.pseudocomplements = tuple(self.arrow(a, bottom) for a in range(n))

    def __repr__(self) -> str:
        return f"Frame({self.name or '?'}, size={self.size})"

    def le(self, a: int, b: int) -> bool:
        return (self.up[a] >> b) & 1 == 1

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, elements: Iterable[int]) -> int:
        out = self.top
        for e in elements:
            out = self.meet_table[out][e]
        return out

    def join_all(self, elements: Iterable[int]) -> int:
        out = self.bottom
        for e in elements:
            out = self.join_table[out][e]
        return out

    def from_jset(self, jset: int) -> int:
        """The element whose join-irreducibles below it are exactly ``jset``."""
        return self._jset_index[jset]

    def arrow(self, a: int, b: int) -> int:
        # a ^ c <= b  iff  J(c) is inside (J \ J(a)) | J(b); take the largest such downset of J.
        allowed = (~self.jset[a] | self.jset[b]) & self.join_irreducibles
        keep = 0
        for bit, below in self._j_downsets:
            if below & ~allowed == 0:
                keep |= bit
        return self._jset_index[keep]

    @cached_property
    def _j_downsets(self) -> tuple[tuple[int, int], ...]:
        return tuple((1 << j, self.jset[j]) for j in bits(self.join_irreducibles))

    def pc(self, a: int) -> int:
        return self.pseudocomplements[a]

    @cached_property
    def arrow_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.arrow(a, b) for b in range(self.size)) for a in range(self.size))

    @cached_property
    def complemented(self) -> int:
        pc, j = self.pseudocomplements, self.join_table
        return mask_of(a for a in range(self.size) if j[a][pc[a]] == self.top)

    @cached_property
    def primes(self) -> int:
        out = 0
        m = self.meet_table
        everything = (1 << self.size) - 1
        for p in range(self.size):
            if p == self.top:
                continue
            below = self.down[p]
            outside = members(everything & ~below)
            if all(not (below >> m[a][b]) & 1 for i, a in enumerate(outside) for b in outside[i:]):
                out |= 1 << p
        return out

    def lower_covers(self, x: int) -> list[int]:
        return [a for a, b in self.poset.covers if b == x]

    def upper_covers(self, x: int) -> list[int]:
        return [b for a, b in self.poset.covers if a == x]

    def interval(self, a: int, b: int) -> int:
        return self.up[a] & self.down[b]


def _distributivity_witness(n: int, meet, join) -> tuple[int, int, int] | None:
    for x in range(n):
        mx = meet[x]
        for y in range(n):
            jy = join[y]
            for z in range(n):
                if mx[jy[z]] != join[mx[y]][mx[z]]:
                    return (x, y, z)
    return None


def frame_from_poset(p: Poset, labels: Sequence[str] | None = None, carrier: Sequence | None = None,
                     name: str = "") -> Frame:
    """Validate that ``p`` is a distributive lattice and build its frame.

    Raises NotALattice with the offending pair, or NotDistributive with a
    triple ``(x, y, z)`` where ``x ^ (y v z) != (x ^ y) v (x ^ z)``.
    """
    n = p.size
    if n == 0:
        raise NotALattice("the empty poset has no top or bottom")
    down_index = {d: i for i, d in enumerate(p.down)}
    up_index = {u: i for i, u in enumerate(p.up)}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        da, ua = p.down[a], p.up[a]
        for b in range(a, n):
            m = down_index.get(da & p.down[b])
            if m is None:
                raise NotALattice(f"{a} and {b} have no meet", witness=(a, b, "meet"))
            j = up_index.get(ua & p.up[b])
            if j is None:
                raise NotALattice(f"{a} and {b} have no join", witness=(a, b, "join"))
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j
    bottom = next(i for i in range(n) if p.down[i] == 1 << i and p.up[i] == (1 << n) - 1)
    top = next(i for i in range(n) if p.up[i] == 1 << i and p.down[i] == (1 << n) - 1)
    meet_t = tuple(tuple(r) for r in meet)
    join_t = tuple(tuple(r) for r in join)

    # A finite lattice is distributive iff J(x v y) = J(x) | J(y) for all x, y.
    # The cubic scan only runs to produce a witness.
    lower = [0] * n
    for a, b in p.covers:
        lower[b] += 1
    jm = mask_of(i for i in range(n) if lower[i] == 1)
    js = [d & jm for d in p.down]
    for a in range(n):
        for b in range(a + 1, n):
            if js[join_t[a][b]] != js[a] | js[b]:
                w = _distributivity_witness(n, meet_t, join_t)
                raise NotDistributive(f"x ^ (y v z) != (x ^ y) v (x ^ z) at {w}", witness=w)
    return Frame(p, meet_t, join_t, bottom, top, labels, carrier, name)


def frame_from_covers(n: int, covers: Iterable[tuple[int, int]], **kw) -> Frame:
    return frame_from_poset(poset_from_covers(n, covers), **kw)


def frame_from_sets(sets: Iterable[int], labels: Sequence[str] | None = None, name: str = "") -> Frame:
    """Frame of a family of bit-sets ordered by inclusion.

    The family is sorted by (size, value), so the empty set (if present) is
    element 0. The sets are kept as the frame's ``carrier``.
    """
    family = sorted(set(sets), key=set_key)
    up = [mask_of(j for j, t in enumerate(family) if s & ~t == 0) for s in family]
    if labels is None:
        labels = ["{" + ",".join(map(str, bits(s))) + "}" for s in family]
    return frame_from_poset(poset_from_up(up), labels=labels, carrier=family, name=name)


# ---------------------------------------------------------------------------
# Element-level operations
# ---------------------------------------------------------------------------


def heyting_arrow(F: Frame, a: int, b: int) -> int:
    return F.arrow(a, b)


def pseudocomplement(F: Frame, a: int) -> int:
    return F.pseudocomplements[a]


def rather_below(F: Frame, a: int, b: int) -> bool:
    return F.join_table[F.pseudocomplements[a]][b] == F.top


def rather_below_relation(F: Frame) -> tuple[int, ...]:
    """Row ``a`` is the bit-set of all ``b`` with ``a`` rather below ``b``."""
    return tuple(mask_of(b for b in range(F.size) if rather_below(F, a, b)) for a in range(F.size))


def completely_below_relation(F: Frame) -> tuple[int, ...]:
    """Greatest interpolating relation inside the rather-below relation.

    Iterates R <- {(a, b) in R | a R c R b for some c} from R = rather-below
    until nothing changes.
    """
    rel = list(rather_below_relation(F))
    changed = True
    while changed:
        changed = False
        for a in range(F.size):
            reach = 0
            for c in bits(rel[a]):
                reach |= rel[c]
            kept = rel[a] & reach
            if kept != rel[a]:
                rel[a] = kept
                changed = True
    return tuple(rel)


def completely_below(F: Frame, a: int, b: int) -> bool:
    return (completely_below_relation(F)[a] >> b) & 1 == 1


def complemented_part(F: Frame) -> int:
    return F.complemented


def is_boolean(F: Frame) -> bool:
    return F.complemented == (1 << F.size) - 1


def is_zero_dimensional(F: Frame) -> bool:
    comp = F.complemented
    return all(F.join_all(bits(comp & F.down[a])) == a for a in range(F.size))


def dense_elements(F: Frame) -> int:
    return mask_of(a for a in range(F.size) if F.pseudocomplements[a] == F.bottom)


def primes(F: Frame) -> int:
    return F.primes


def join_irreducibles(F: Frame) -> int:
    return F.join_irreducibles


def meet_irreducibles(F: Frame) -> int:
    return F.meet_irreducibles


def complement(F: Frame, a: int) -> int | None:
    c = F.pseudocomplements[a]
    return c if F.join_table[a][c] == F.top else None


def generate_subframe(F: Frame, mask: int) -> int:
    """Closure of ``mask`` plus bottom and top under binary meet and join."""
    out = mask | (1 << F.bottom) | (1 << F.top)
    frontier = members(out)
    while frontier:
        current = members(out)
        fresh = 0
        for a in frontier:
            ma, ja = F.meet_table[a], F.join_table[a]
            for b in current:
                fresh |= (1 << ma[b]) | (1 << ja[b])
        fresh &= ~out
        out |= fresh
        frontier = members(fresh)
    return out


def subframe(F: Frame, mask: int, name: str = "") -> tuple[Frame, FrameHom]:
    """The subframe on ``mask`` and its inclusion into ``F``.

    ``mask`` must contain bottom and top and be closed under meet and join.
    """
    elems = members(mask)
    if not (mask >> F.bottom) & 1 or not (mask >> F.top) & 1:
        raise ValidationError("a subframe must contain bottom and top")
    pos = {e: i for i, e in enumerate(elems)}
    for i, a in enumerate(elems):
        for b in elems[i:]:
            for op, table in (("meet", F.meet_table), ("join", F.join_table)):
                if table[a][b] not in pos:
                    raise ValidationError(f"{op} of {a} and {b} leaves the subset", witness=(a, b, op))
    p = F.poset.induced(elems)
    meet = tuple(tuple(pos[F.meet_table[a][b]] for b in elems) for a in elems)
    join = tuple(tuple(pos[F.join_table[a][b]] for b in elems) for a in elems)
    carrier = [F.carrier[e] for e in elems] if F.carrier is not None else None
    sub = Frame(p, meet, join, pos[F.bottom], pos[F.top], [F.labels[e] for e in elems], carrier, name)
    return sub, FrameHom(sub, F, tuple(elems))


def product_frame(F: Frame, G: Frame, name: str = "") -> Frame:
    n, m = F.size, G.size
    up = []
    for a in range(n):
        for b in range(m):
            up.append(mask_of(c * m + d for c in bits(F.up[a]) for d in bits(G.up[b])))
    labels = [f"({F.labels[a]},{G.labels[b]})" for a in range(n) for b in range(m)]
    return frame_from_poset(poset_from_up(up), labels=labels, name=name)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FrameHom:
    source: Frame
    target: Frame
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other) -> bool:
        return (isinstance(other, FrameHom) and self.source is other.source
                and self.target is other.target and self.map == other.map)

    def __hash__(self) -> int:
        return hash(self.map)


def hom_violation(f: FrameHom) -> tuple | None:
    S, T, m = f.source, f.target, f.map
    if len(m) != S.size:
        return ("length", len(m), S.size)
    if any(not 0 <= y < T.size for y in m):
        return ("range",)
    if m[S.bottom] != T.bottom:
        return (S.bottom, S.bottom, "bottom")
    if m[S.top] != T.top:
        return (S.top, S.top, "top")
    for a in range(S.size):
        for b in range(a + 1, S.size):
            if m[S.meet_table[a][b]] != T.meet_table[m[a]][m[b]]:
                return (a, b, "meet")
            if m[S.join_table[a][b]] != T.join_table[m[a]][m[b]]:
                return (a, b, "join")
    return None


def hom_validate(f: FrameHom) -> FrameHom:
    w = hom_violation(f)
    if w is not None:
        raise NotAHom(f"map does not preserve {w[-1]} at {w[:-1]}", witness=w)
    return f


def frame_hom(source: Frame, target: Frame, mapping: Sequence[int]) -> FrameHom:
    return hom_validate(FrameHom(source, target, tuple(mapping)))


def identity_hom(F: Frame) -> FrameHom:
    return FrameHom(F, F, tuple(range(F.size)))


def compose(g: FrameHom, f: FrameHom) -> FrameHom:
    """``g`` after ``f``."""
    return FrameHom(f.source, g.target, tuple(g.map[x] for x in f.map))


def hom_right_adjoint(f: FrameHom) -> tuple[int, ...]:
    S, T = f.source, f.target
    return tuple(S.join_all(x for x in range(S.size) if T.le(f.map[x], y)) for y in range(T.size))


def hom_kernel(f: FrameHom):
    from .congruence import from_kernel

    return from_kernel(f.source, lambda x: f.map[x])


def hom_is_dense(f: FrameHom) -> bool:
    return all(x == f.source.bottom for x in range(f.source.size) if f.map[x] == f.target.bottom)


def hom_is_codense(f: FrameHom) -> bool:
    return all(x == f.source.top for x in range(f.source.size) if f.map[x] == f.target.top)


def hom_is_surjective(f: FrameHom) -> bool:
    return len(set(f.map)) == f.target.size


def hom_is_injective(f: FrameHom) -> bool:
    return len(set(f.map)) == f.source.size


def iter_homs(F: Frame, G: Frame) -> Iterator[FrameHom]:
    """Every frame homomorphism F -> G, by brute force.

    A hom is fixed by its values on join-irreducibles, so this backtracks
    over monotone assignments of those and keeps the extensions that
    validate.
    """
    js = [j for j in F.poset.linear_extension if (F.join_irreducibles >> j) & 1]
    assign: dict[int, int] = {}

    def extend():
        m = tuple(G.join_all(assign[j] for j in bits(F.jset[x])) for x in range(F.size))
        h = FrameHom(F, G, m)
        if hom_violation(h) is None:
            yield h

    def rec(k):
        if k == len(js):
            yield from extend()
            return
        j = js[k]
        floor = G.join_all(assign[i] for i in js[:k] if F.le(i, j))
        for y in bits(G.up[floor]):
            assign[j] = y
            yield from rec(k + 1)
        del assign[j]

    yield from rec(0)


def iter_isomorphisms(F: Frame, G: Frame) -> Iterator[FrameHom]:
    """Every lattice isomorphism F -> G (as order isomorphisms of J(F), J(G))."""
    if F.size != G.size or F.join_irreducibles.bit_count() != G.join_irreducibles.bit_count():
        return
    jf = [j for j in F.poset.linear_extension if (F.join_irreducibles >> j) & 1]
    jg = members(G.join_irreducibles)
    assign: dict[int, int] = {}
    used = 0

    def rec(k):
        nonlocal used
        if k == len(jf):
            m = tuple(G.from_jset(mask_of(assign[j] for j in bits(F.jset[x]))) for x in range(F.size))
            yield FrameHom(F, G, m)
            return
        j = jf[k]
        for y in jg:
            if (used >> y) & 1:
                continue
            if all(F.le(i, j) == G.le(assign[i], y) and F.le(j, i) == G.le(y, assign[i]) for i in jf[:k]):
                assign[j] = y
                used |= 1 << y
                yield from rec(k + 1)
                used &= ~(1 << y)
                del assign[j]

    yield from rec(0)


def is_isomorphic(F: Frame, G: Frame) -> bool:
    return next(iter_isomorphisms(F, G), None) is not None


# ---------------------------------------------------------------------------
# Downset frames and free constructions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MeetSemilattice:
    poset: Poset
    meet: tuple[tuple[int, ...], ...]
    top: int
    labels: tuple[str, ...] = ()


def meet_semilattice_from_poset(p: Poset, labels: Sequence[str] = ()) -> MeetSemilattice:
    n = p.size
    down_index = {d: i for i, d in enumerate(p.down)}
    tops = [i for i in range(n) if p.up[i] == 1 << i and p.down[i] == (1 << n) - 1]
    if not tops:
        raise NotALattice("a meet-semilattice needs a top element")
    meet = []
    for a in range(n):
        row = []
        for b in range(n):
            m = down_index.get(p.down[a] & p.down[b])
            if m is None:
                raise NotALattice(f"{a} and {b} have no meet", witness=(a, b, "meet"))
            row.append(m)
        meet.append(tuple(row))
    return MeetSemilattice(p, tuple(meet), tops[0], tuple(labels) or tuple(str(i) for i in range(n)))


def downset_frame(p: Poset, max_points: int = MAX_DOWNSET_POINTS, labels: Sequence[str] | None = None,
                  name: str = "") -> Frame:
    """Frame of all downsets of ``p`` under inclusion."""
    if p.size > max_points:
        raise SizeBudgetExceeded(1 << p.size, 1 << max_points)
    downs = [0]
    for x in p.linear_extension:
        # Every downset containing x but nothing above it arises by adding x to one without it.
        below = p.down[x] & ~(1 << x)
        downs += [d | (1 << x) for d in downs if d & below == below]
    names = labels if labels is not None else tuple(str(i) for i in range(p.size))
    set_labels = ["{" + ",".join(names[i] for i in bits(d)) + "}" for d in sorted(downs, key=set_key)]
    return frame_from_sets(downs, labels=set_labels, name=name)


def free_meet_semilattice(k: int) -> MeetSemilattice:
    """Finite subsets of ``k`` generators under reverse inclusion."""
    if k > MAX_DOWNSET_POINTS // 4:
        raise SizeBudgetExceeded(1 << (1 << k), 1 << MAX_DOWNSET_POINTS)
    subsets = sorted(range(1 << k), key=lambda s: (-s.bit_count(), s))
    pos = {s: i for i, s in enumerate(subsets)}
    up = [mask_of(pos[t] for t in subsets if t & ~s == 0) for s in subsets]
    p = poset_from_up(up)
    labels = ["{" + ",".join(f"g{i}" for i in bits(s)) + "}" for s in subsets]
    meet = tuple(tuple(pos[s | t] for t in subsets) for s in subsets)
    return MeetSemilattice(p, meet, pos[0], tuple(labels))


def free_frame_on_semilattice(s: MeetSemilattice, name: str = "") -> Frame:
    return downset_frame(s.poset, labels=s.labels, name=name)
