"""Congruences on a finite frame, stored as nuclei.

A congruence is kept as ``nu`` with ``nu[x]`` the largest element of the
class of ``x``. Two congruences on the same frame are equal iff their
``nu`` tuples are equal, and ``C <= D`` iff ``nu_C <= nu_D`` pointwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import FrameMismatch, InvariantViolation, NoLeastWitness, NotANucleus, SpaceMismatch
from .order import Frame, FrameHom, bits, mask_of, members


@dataclass(frozen=True, eq=False)
class Congruence:
    frame: Frame
    nu: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and self.frame is other.frame and self.nu == other.nu

    def __hash__(self) -> int:
        return hash(self.nu)

    def __repr__(self) -> str:
        return f"Congruence(nu={list(self.nu)})"

    def related(self, x: int, y: int) -> bool:
        return self.nu[x] == self.nu[y]

    def le(self, other: Congruence) -> bool:
        _same_frame(self, other)
        F = self.frame
        return all(F.le(a, b) for a, b in zip(self.nu, other.nu))

    def blocks(self) -> list[int]:
        """Classes as bit-sets, ordered by their least element."""
        by_top: dict[int, int] = {}
        for x, t in enumerate(self.nu):
            by_top[t] = by_top.get(t, 0) | (1 << x)
        return sorted(by_top.values(), key=lambda b: (b & -b))

    def block_minima(self) -> tuple[int, ...]:
        low = {}
        for b in self.blocks():
            m = self.frame.meet_all(bits(b))
            for x in bits(b):
                low[x] = m
        return tuple(low[x] for x in range(self.frame.size))

    def fixed_points(self) -> int:
        return mask_of(x for x, t in enumerate(self.nu) if t == x)


def _same_frame(C: Congruence, D: Congruence) -> None:
    if C.frame is not D.frame:
        raise FrameMismatch("congruences live on different frames")


def nucleus_violation(F: Frame, nu: Sequence[int]) -> tuple | None:
    """First failure of the nucleus laws, as ``(law, x[, y])``, or None."""
    n = F.size
    if len(nu) != n or any(not 0 <= v < n for v in nu):
        return ("shape",)
    for x in range(n):
        if not F.le(x, nu[x]):
            return ("inflationary", x)
    for x in range(n):
        if nu[nu[x]] != nu[x]:
            return ("idempotent", x)
    for x in range(n):
        for y in range(x + 1, n):
            if nu[F.meet_table[x][y]] != F.meet_table[nu[x]][nu[y]]:
                return ("meet-preserving", x, y)
    return None


def congruence_from_nucleus(F: Frame, nu: Sequence[int]) -> Congruence:
    w = nucleus_violation(F, nu)
    if w is not None:
        raise NotANucleus(f"not a nucleus: {w[0]} fails at {w[1:]}", witness=w)
    return Congruence(F, tuple(nu))


def from_kernel(F: Frame, key: Callable[[int], Hashable]) -> Congruence:
    """The equivalence ``x ~ y iff key(x) == key(y)``, assumed to be a congruence."""
    tops: dict = {}
    keys = [key(x) for x in range(F.size)]
    for x, k in enumerate(keys):
        tops[k] = F.join_table[tops[k]][x] if k in tops else x
    return Congruence(F, tuple(tops[k] for k in keys))


def diagonal(F: Frame) -> Congruence:
    return Congruence(F, tuple(range(F.size)))


def all_pairs(F: Frame) -> Congruence:
    return Congruence(F, (F.top,) * F.size)


def congruence_from_pairs(F: Frame, pairs: Iterable[tuple[int, int]], base: Congruence | None = None) -> Congruence:
    """Least congruence containing ``pairs`` and ``base`` (if given).

    Union-find with a queue of effective merges. Each merged pair (x, y) is
    translated by every z through meet and join; since the translations of
    a generating set generate the closure, only fresh merges need work.
    """
    n = F.size
    # A base congruence is already closed, so its classes seed the forest
    # directly and never enter the queue.
    parent = list(base.nu) if base is not None else list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue: deque[tuple[int, int]] = deque()

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
            queue.append((x, y))

    for x, y in pairs:
        union(x, y)
    meet, join = F.meet_table, F.join_table
    while queue:
        x, y = queue.popleft()
        mx, my, jx, jy = meet[x], meet[y], join[x], join[y]
        for z in range(n):
            union(mx[z], my[z])
            union(jx[z], jy[z])
    return from_kernel(F, find)


def nabla(F: Frame, a: int) -> Congruence:
    return Congruence(F, F.join_table[a])


def delta(F: Frame, a: int) -> Congruence:
    # The largest y with y ^ a = x ^ a is a -> x.
    return Congruence(F, tuple(F.arrow(a, x) for x in range(F.size)))


def principal_congruence(F: Frame, a: int, b: int) -> Congruence:
    lo, hi = F.meet_table[a][b], F.join_table[a][b]
    return meet(nabla(F, hi), delta(F, lo))


def meet(C: Congruence, D: Congruence) -> Congruence:
    _same_frame(C, D)
    return from_kernel(C.frame, lambda x: (C.nu[x], D.nu[x]))


def join(C: Congruence, D: Congruence) -> Congruence:
    _same_frame(C, D)
    return congruence_from_pairs(C.frame, enumerate(D.nu), base=C)


def meet_all(F: Frame, congruences: Iterable[Congruence]) -> Congruence:
    out = all_pairs(F)
    for C in congruences:
        out = meet(out, C)
    return out


def join_all(F: Frame, congruences: Iterable[Congruence]) -> Congruence:
    pairs = [(x, t) for C in congruences for x, t in enumerate(C.nu)]
    return congruence_from_pairs(F, pairs)


def join_with_nabla(C: Congruence, a: int) -> Congruence:
    F = C.frame
    return from_kernel(F, lambda x: C.nu[F.join_table[x][a]])


def join_with_delta(C: Congruence, a: int) -> Congruence:
    F = C.frame
    return from_kernel(F, lambda x: C.nu[F.meet_table[x][a]])


def closure(C: Congruence) -> Congruence:
    """Largest closed congruence below ``C``."""
    return nabla(C.frame, C.nu[C.frame.bottom])


def quotient(F: Frame, C: Congruence, name: str = "") -> tuple[Frame, FrameHom]:
    """Quotient frame on the class tops of ``C`` and the quotient map onto it."""
    if C.frame is not F:
        raise FrameMismatch("congruence is not on this frame")
    reps = members(C.fixed_points())
    pos = {r: i for i, r in enumerate(reps)}
    nu = C.nu
    meet_t = tuple(tuple(pos[F.meet_table[a][b]] for b in reps) for a in reps)
    join_t = tuple(tuple(pos[nu[F.join_table[a][b]]] for b in reps) for a in reps)
    Q = Frame(F.poset.induced(reps), meet_t, join_t, pos[nu[F.bottom]], pos[F.top],
              [F.labels[r] for r in reps], None, name)
    return Q, FrameHom(F, Q, tuple(pos[nu[x]] for x in range(F.size)))


def largest_dense(F: Frame) -> Congruence:
    pc = F.pseudocomplements
    return from_kernel(F, lambda x: pc[pc[x]])


def clear_congruence(F: Frame, a: int) -> Congruence:
    return from_kernel(F, lambda x: F.arrow(x, a))


def clear_congruence_of_ideal(F: Frame, ideal: int) -> Congruence:
    """Finite ideals are principal, so this is the clear congruence of their join."""
    return clear_congruence(F, F.join_all(bits(ideal)))


def is_dense(C: Congruence) -> bool:
    return C.nu[C.frame.bottom] == C.frame.bottom


def is_dense_in(C: Congruence, D: Congruence) -> bool:
    return closure(C).le(D)


def is_clear(C: Congruence) -> bool:
    return C == clear_congruence(C.frame, C.nu[C.frame.bottom])


def is_rare(C: Congruence) -> bool:
    """Every nontrivial interval contains a collapsed pair.

    Classes are convex, so an interval holds a collapsed pair iff it holds
    a collapsed cover, which is what gets checked.
    """
    F = C.frame
    collapsed = [(c, d) for c, d in F.poset.covers if C.nu[c] == C.nu[d]]
    for a in range(F.size):
        for b in bits(F.up[a] & ~(1 << a)):
            if not any(F.le(a, c) and F.le(d, b) for c, d in collapsed):
                return False
    return True


def is_smooth_in_assembly(C: Congruence, A) -> bool:
    """``C`` is a regular element of the assembled congruence frame ``A``."""
    G = A.frame
    i = A.index[C]
    return G.pc(G.pc(i)) == i


def clear_decomposition(C: Congruence) -> int:
    """All ``a`` with the clear congruence of ``a`` above ``C``."""
    F = C.frame
    return mask_of(a for a in range(F.size) if C.le(clear_congruence(F, a)))


def beazer_macnab_witness(F: Frame, a: int) -> int:
    """Least ``b >= a`` with ``(b, 1)`` in the clear congruence of ``a``.

    Also checks that the clear congruence of ``a`` equals the join of the
    closed congruence of ``a`` with the open congruence of ``b``.
    """
    top_class = F.arrow(F.top, a)
    candidates = mask_of(b for b in bits(F.up[a]) if F.arrow(b, a) == top_class)
    least = F.meet_all(bits(candidates))
    if not (candidates >> least) & 1:
        raise NoLeastWitness(f"no least witness above {a}", witness=(a, candidates))
    lhs = clear_congruence(F, a)
    rhs = join(nabla(F, a), delta(F, least))
    if lhs != rhs:
        raise InvariantViolation(f"clear congruence of {a} is not the expected join", witness=(a, least))
    return least


def join_with_largest_dense(C: Congruence) -> Congruence:
    F = C.frame
    a = C.nu[F.bottom]
    return clear_congruence(F, F.pc(F.pc(a)))


def subspace_congruence(F: Frame, A: int, X) -> Congruence:
    """Opens ``U, V`` related iff ``U & A == V & A``; ``F`` must be the frame of opens of ``X``."""
    if F.carrier is None or tuple(F.carrier) != tuple(X.opens):
        raise SpaceMismatch("frame is not the frame of opens of this space")
    if A & ~X.full:
        raise SpaceMismatch("subset mentions points outside the space")
    return from_kernel(F, lambda u: F.carrier[u] & A)
