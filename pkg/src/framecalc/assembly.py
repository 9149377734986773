"""The frame of all congruences of a finite frame, and what hangs off it.

For finite ``L`` the congruence frame is Boolean with ``2^|J(L)|``
elements, where ``J(L)`` is the set of join-irreducibles. The size is
predicted up front and checked against a budget before anything is built.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import congruence as cg
from .congruence import Congruence
from .errors import HomMismatch, InvariantViolation, SizeBudgetExceeded
from .order import (
    Frame,
    FrameHom,
    bits,
    frame_from_poset,
    generate_subframe,
    hom_kernel,
    hom_validate,
    hom_violation,
    is_boolean,
    mask_of,
    members,
    poset_from_up,
)

DEFAULT_BUDGET = 1 << 16


def default_budget() -> int:
    raw = os.environ.get("FRAMECALC_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def predicted_size(L: Frame) -> int:
    return 1 << L.join_irreducibles.bit_count()


@dataclass(frozen=True, eq=False)
class Assembly:
    base: Frame
    frame: Frame
    congruences: tuple[Congruence, ...]
    index: dict = field(repr=False)
    nabla_map: tuple[int, ...]
    delta_map: tuple[int, ...]
    part1: int
    part2: int

    def __repr__(self) -> str:
        return f"Assembly(base={self.base!r}, size={self.frame.size})"

    def congruence(self, i: int) -> Congruence:
        return self.congruences[i]

    @property
    def nabla_hom(self) -> FrameHom:
        return FrameHom(self.base, self.frame, self.nabla_map)


def enumerate_congruences(L: Frame) -> list[Congruence]:
    """All congruences, one per set ``T`` of join-irreducibles.

    The congruence for ``T`` relates ``x`` and ``y`` when they have the same
    join-irreducibles inside ``T``. Distinct sets give distinct congruences
    and there are ``2^|J|`` of them, which is all of them.
    """
    jset = L.jset
    js = list(bits(L.join_irreducibles))
    out = []
    for k in range(1 << len(js)):
        keep = mask_of(j for i, j in enumerate(js) if (k >> i) & 1)
        out.append(cg.from_kernel(L, lambda x: jset[x] & keep))
    return sorted(out, key=lambda c: c.nu)


def enumerate_congruences_by_closure(L: Frame) -> list[Congruence]:
    """All congruences, by closing the principal ones under binary join.

    Classes are convex, so every congruence is the join of the principal
    congruences of the covering pairs it collapses; those are the only
    generators used.
    """
    gens: dict[Congruence, tuple[int, int]] = {}
    for a, b in sorted(L.poset.covers):
        gens.setdefault(cg.principal_congruence(L, a, b), (a, b))
    seen = {cg.diagonal(L)}
    frontier = list(seen)
    while frontier:
        fresh = []
        for C in frontier:
            for g in gens:
                if g.le(C):
                    continue
                D = cg.congruence_from_pairs(L, [gens[g]], base=C)
                if D not in seen:
                    seen.add(D)
                    fresh.append(D)
        frontier = fresh
    return sorted(seen, key=lambda c: c.nu)


def _label(L: Frame, C: Congruence, i: int) -> str:
    n = L.size
    if C.nu == tuple(range(n)):
        return "0"
    if C.nu == (L.top,) * n:
        return "1"
    for a in range(n):
        if C.nu == L.join_table[a]:
            return f"nabla({L.labels[a]})"
    for a in range(n):
        if C == cg.delta(L, a):
            return f"delta({L.labels[a]})"
    return f"c{i}"


def assemble(L: Frame, budget: int | None = None) -> Assembly:
    budget = default_budget() if budget is None else budget
    predicted = predicted_size(L)
    if predicted > budget:
        raise SizeBudgetExceeded(predicted, budget)
    congs = enumerate_congruences(L)
    if len(congs) != predicted:
        raise InvariantViolation(f"found {len(congs)} congruences, expected {predicted}",
                                 witness=(len(congs), predicted))
    # Nuclei are ordered by reverse inclusion of their fixed-point sets.
    fixed = [C.fixed_points() for C in congs]
    up = [mask_of(j for j, fj in enumerate(fixed) if fj & ~fi == 0) for fi in fixed]
    labels = [_label(L, C, i) for i, C in enumerate(congs)]
    name = f"C({L.name})" if L.name else ""
    G = frame_from_poset(poset_from_up(up), labels=labels, carrier=[C.nu for C in congs], name=name)
    if not is_boolean(G):
        raise InvariantViolation("congruence frame of a finite frame is not Boolean")
    index = {C: i for i, C in enumerate(congs)}
    nabla_map = tuple(index[cg.nabla(L, a)] for a in range(L.size))
    delta_map = tuple(index[cg.delta(L, a)] for a in range(L.size))
    part1 = generate_subframe(G, mask_of(nabla_map))
    part2 = generate_subframe(G, mask_of(delta_map))
    return Assembly(L, G, tuple(congs), index, nabla_map, delta_map, part1, part2)


def functor_on_hom(f: FrameHom, A: Assembly, B: Assembly) -> FrameHom:
    """The induced hom between congruence frames, computed on generators.

    Each congruence is the join of the principal congruences of the pairs
    ``(x, nu[x])``, and the pair ``(x, y)`` is sent to ``(f x, f y)``.
    """
    if A.base is not f.source or B.base is not f.target:
        raise HomMismatch("assemblies do not match the hom's source and target")
    H = B.frame
    m = f.map
    out = []
    for C in A.congruences:
        out.append(H.join_all(H.meet_table[B.nabla_map[m[t]]][B.delta_map[m[x]]] for x, t in enumerate(C.nu)))
    return hom_validate(FrameHom(A.frame, B.frame, tuple(out)))


def extend_along_nabla(A: Assembly, f: FrameHom) -> FrameHom | None:
    """The hom ``g`` out of the congruence frame with ``g o nabla = f``.

    Needs every ``f(x)`` complemented; returns None if the generator
    formula does not produce a hom.
    """
    M = f.target
    m = f.map
    comp = []
    for y in m:
        c = M.pc(y)
        if M.join_table[y][c] != M.top:
            return None
        comp.append(c)
    out = tuple(M.join_all(M.meet_table[m[t]][comp[x]] for x, t in enumerate(C.nu)) for C in A.congruences)
    g = FrameHom(A.frame, M, out)
    return g if hom_violation(g) is None else None


def kernel_lemma_check(phi: FrameHom, A: Assembly) -> bool:
    """Closure of ``ker phi`` equals the closed congruence at ``ker(phi o nabla)``."""
    if phi.source is not A.frame:
        raise HomMismatch("hom does not start at this assembly")
    K = hom_kernel(phi)
    lifted = A.index[cg.from_kernel(A.base, lambda x: phi.map[A.nabla_map[x]])]
    return cg.closure(K) == cg.nabla(A.frame, lifted)


def functor_kernel_check(f: FrameHom, A: Assembly, B: Assembly) -> bool:
    """The closure of the kernel of the induced hom is the closed congruence at ``ker f``."""
    K = hom_kernel(functor_on_hom(f, A, B))
    return cg.closure(K) == cg.nabla(A.frame, A.index[hom_kernel(f)])


@dataclass(frozen=True, eq=False)
class QuotientIso:
    hom: FrameHom
    source_assembly: Assembly
    target_assembly: Assembly
    part1: int
    part2: int


def quotient_iso(L: Frame, C: Congruence, budget: int | None = None, assembly: Assembly | None = None) -> QuotientIso:
    """Isomorphism from ``C(L) / nabla_C`` onto the congruence frame of ``L / C``.

    Built as the factorisation of the induced hom of the quotient map, then
    checked to be a bijective hom carrying each part onto the matching part.
    """
    A = assembly if assembly is not None else assemble(L, budget)
    Q, q = cg.quotient(L, C)
    B = assemble(Q, budget)
    Cq = functor_on_hom(q, A, B)
    closed = cg.nabla(A.frame, A.index[C])
    if cg.from_kernel(A.frame, lambda i: Cq.map[i]) != closed:
        raise InvariantViolation("kernel of the induced hom is not the closed congruence", witness=C.nu)
    AQ, pi = cg.quotient(A.frame, closed)
    reps = members(closed.fixed_points())
    iso = FrameHom(AQ, B.frame, tuple(Cq.map[r] for r in reps))
    if hom_violation(iso) is not None or len(set(iso.map)) != B.frame.size:
        raise InvariantViolation("quotient map is not an isomorphism", witness=C.nu)
    p1 = mask_of(pi.map[i] for i in bits(A.part1))
    p2 = mask_of(pi.map[i] for i in bits(A.part2))
    if mask_of(iso.map[i] for i in bits(p1)) != B.part1 or mask_of(iso.map[i] for i in bits(p2)) != B.part2:
        raise InvariantViolation("isomorphism does not respect the parts", witness=C.nu)
    return QuotientIso(iso, A, B, p1, p2)


@dataclass(frozen=True)
class Tower:
    assemblies: tuple[Assembly, ...]
    sizes: tuple[int, ...]
    stable_at: int | None


def tower(L: Frame, steps: int, budget: int | None = None) -> Tower:
    """Iterate the congruence frame construction up to ``steps`` times.

    Stops at the first level whose closed-congruence embedding is onto;
    ``stable_at`` is that level (0 means ``L`` itself was already Boolean).
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    levels: list[Assembly] = []
    sizes = [L.size]
    base = L
    stable = None
    for level in range(steps):
        try:
            A = assemble(base, budget)
        except SizeBudgetExceeded as e:
            raise SizeBudgetExceeded(e.predicted, e.budget, partial=tuple(sizes)) from None
        levels.append(A)
        sizes.append(A.frame.size)
        if A.frame.size == base.size:
            stable = level
            break
        base = A.frame
    if stable is not None and stable > 1:
        raise InvariantViolation(f"tower stabilised late at {stable}")
    return Tower(tuple(levels), tuple(sizes), stable)


def congruence_biframe(A: Assembly):
    from .biframe import Biframe

    return Biframe(A.frame, A.part1, A.part2)
