"""Biframes: a frame with two generating subframes.

The first part plays the role of closed congruences and the second of
open ones. A biframe is strictly zero-dimensional when each first-part
element has a complement in the second part and those complements
generate the second part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import congruence as cg
from .assembly import Assembly, assemble, functor_on_hom
from .errors import InvariantViolation, NotABiframe, NotInjective
from .order import (
    Frame,
    FrameHom,
    bits,
    complement,
    generate_subframe,
    hom_is_dense,
    hom_is_surjective,
    hom_kernel,
    hom_right_adjoint,
    hom_validate,
    iter_homs,
    iter_isomorphisms,
    mask_of,
    members,
    subframe,
)


@dataclass(frozen=True, eq=False)
class Biframe:
    total: Frame
    part1: int
    part2: int

    def __repr__(self) -> str:
        return f"Biframe(total={self.total.size}, part1={members(self.part1)}, part2={members(self.part2)})"

    def part_frame(self, which: int = 1) -> tuple[Frame, FrameHom]:
        """The chosen part as a frame in its own right, with its inclusion."""
        return subframe(self.total, self.part1 if which == 1 else self.part2)


@dataclass(frozen=True, eq=False)
class BiframeHom:
    source: Biframe
    target: Biframe
    hom: FrameHom

    def __call__(self, x: int) -> int:
        return self.hom.map[x]


def biframe_violation(B: Biframe) -> tuple | None:
    T = B.total
    for name, part in (("part1", B.part1), ("part2", B.part2)):
        if part & ~((1 << T.size) - 1):
            return (name, "range")
        for end in (T.bottom, T.top):
            if not (part >> end) & 1:
                return (name, "missing", end)
        elems = members(part)
        for i, a in enumerate(elems):
            for b in elems[i:]:
                for op, table in (("meet", T.meet_table), ("join", T.join_table)):
                    if not (part >> table[a][b]) & 1:
                        return (name, op, a, b)
    generated = generate_subframe(T, B.part1 | B.part2)
    if generated != (1 << T.size) - 1:
        missing = next(bits(((1 << T.size) - 1) & ~generated))
        return ("generation", missing)
    return None


def validate_biframe(B: Biframe) -> Biframe:
    w = biframe_violation(B)
    if w is not None:
        raise NotABiframe(f"not a biframe: {w}", witness=w)
    return B


def biframe_hom(source: Biframe, target: Biframe, mapping) -> BiframeHom:
    f = hom_validate(FrameHom(source.total, target.total, tuple(mapping)))
    for name, sp, tp in (("part1", source.part1, target.part1), ("part2", source.part2, target.part2)):
        for x in bits(sp):
            if not (tp >> f.map[x]) & 1:
                raise NotABiframe(f"{name} element {x} leaves {name}", witness=(name, x))
    return BiframeHom(source, target, f)


def str0d_violation(B: Biframe) -> tuple | None:
    T = B.total
    comps = 0
    for a in bits(B.part1):
        c = complement(T, a)
        if c is None or not (B.part2 >> c) & 1:
            return ("complement", a)
        comps |= 1 << c
    if generate_subframe(T, comps) != B.part2:
        return ("complements-generate", members(B.part2 & ~generate_subframe(T, comps)))
    return None


def is_strictly_zero_dimensional(B: Biframe) -> bool:
    validate_biframe(B)
    return str0d_violation(B) is None


def partner_complements(B: Biframe) -> dict[int, int]:
    return {a: complement(B.total, a) for a in bits(B.part1)}


# ---------------------------------------------------------------------------
# The congruential coreflection
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Coreflection:
    biframe: Biframe
    first_part: Frame
    inclusion: FrameHom
    assembly: Assembly
    chi: BiframeHom

    @property
    def right_adjoint(self) -> tuple[int, ...]:
        return hom_right_adjoint(self.chi.hom)


def coreflection(B: Biframe, budget: int | None = None) -> Coreflection:
    """The map from the congruence biframe of the first part onto ``B``.

    Sends the closed congruence at ``a`` to ``a`` and the open one to the
    complement of ``a``, extended over the generator decomposition.
    """
    if not is_strictly_zero_dimensional(B):
        raise NotABiframe("coreflection needs a strictly zero-dimensional biframe", witness=str0d_violation(B))
    L1, inc = B.part_frame(1)
    A = assemble(L1, budget)
    T = B.total
    comp = [T.pc(inc.map[x]) for x in range(L1.size)]
    out = tuple(T.join_all(T.meet_table[inc.map[t]][comp[x]] for x, t in enumerate(C.nu)) for C in A.congruences)
    source = Biframe(A.frame, A.part1, A.part2)
    chi = biframe_hom(source, B, out)
    if not hom_is_surjective(chi.hom) or not hom_is_dense(chi.hom):
        raise InvariantViolation("coreflection map is not a dense surjection")
    return Coreflection(B, L1, inc, A, chi)


def str0d_biframes_over(L: Frame, budget: int | None = None) -> list[Biframe]:
    """Quotients of the congruence biframe of ``L`` by dense congruences."""
    A = assemble(L, budget)
    G = A.frame
    out = []
    for nu in _all_nuclei_of_boolean(G):
        if nu[G.bottom] != G.bottom:
            continue
        Q, q = cg.quotient(G, cg.Congruence(G, nu))
        B = Biframe(Q, mask_of(q.map[i] for i in bits(A.part1)), mask_of(q.map[i] for i in bits(A.part2)))
        if is_strictly_zero_dimensional(B):
            out.append(B)
    if len(out) != 1:
        raise InvariantViolation(f"expected one strictly zero-dimensional biframe, found {len(out)}")
    return out


def _all_nuclei_of_boolean(G: Frame) -> Iterator[tuple[int, ...]]:
    # On a Boolean frame every congruence is closed, so these are all of them.
    for a in range(G.size):
        yield G.join_table[a]


# ---------------------------------------------------------------------------
# Closed and clear elements
# ---------------------------------------------------------------------------


def closed_elements(B: Biframe) -> int:
    return B.part1


def biframe_closure(B: Biframe, x: int) -> int:
    """Largest first-part element below ``x``."""
    T = B.total
    return T.join_all(bits(B.part1 & T.down[x]))


def clear_elements(B: Biframe) -> int:
    T = B.total
    cl = [biframe_closure(B, x) for x in range(T.size)]
    out = 0
    for c in set(cl):
        same = [y for y in range(T.size) if cl[y] == c]
        top = T.join_all(same)
        if cl[top] == c:
            out |= 1 << top
    return out


def is_clear_element(B: Biframe, x: int) -> bool:
    return (clear_elements(B) >> x) & 1 == 1


def congruential_routes(B: Biframe, budget: int | None = None) -> tuple[bool, bool]:
    """(coreflection is injective, every closed element is the closure of a clear one)."""
    chi = coreflection(B, budget).chi.hom
    injective = len(set(chi.map)) == chi.source.size
    clear = clear_elements(B)
    closures = {biframe_closure(B, x) for x in bits(clear)}
    complete = all(c in closures for c in bits(B.part1))
    return injective, complete


def is_congruential(B: Biframe, budget: int | None = None) -> bool:
    injective, complete = congruential_routes(B, budget)
    if injective != complete:
        raise InvariantViolation("congruentiality routes disagree", witness=(injective, complete))
    return injective


# ---------------------------------------------------------------------------
# Homs, quotients, sub-biframes
# ---------------------------------------------------------------------------


def hom_is_mono(f: BiframeHom) -> bool:
    return hom_is_dense(f.hom)


def first_part_injective(f: BiframeHom) -> bool:
    return len({f.hom.map[x] for x in bits(f.source.part1)}) == f.source.part1.bit_count()


def hom_is_extremal_epi(f: BiframeHom) -> bool:
    if not hom_is_surjective(f.hom):
        return False
    K = hom_kernel(f.hom)
    return K == cg.closure(K)


def closed_quotient(B: Biframe, a: int) -> Biframe:
    T = B.total
    Q, q = cg.quotient(T, cg.nabla(T, a))
    out = Biframe(Q, mask_of(q.map[x] for x in bits(B.part1)), mask_of(q.map[x] for x in bits(B.part2)))
    if not is_strictly_zero_dimensional(out):
        raise InvariantViolation("closed quotient is not strictly zero-dimensional", witness=a)
    return out


def quotient_biframe(B: Biframe, C: cg.Congruence) -> tuple[Biframe, BiframeHom]:
    Q, q = cg.quotient(B.total, C)
    out = Biframe(Q, mask_of(q.map[x] for x in bits(B.part1)), mask_of(q.map[x] for x in bits(B.part2)))
    return out, BiframeHom(B, out, q)


def smooth_congruences(A: Assembly) -> int:
    G = A.frame
    smooth = mask_of(i for i in range(G.size) if G.pc(G.pc(i)) == i)
    if smooth != (1 << G.size) - 1:
        raise InvariantViolation("a congruence of a finite frame is not smooth", witness=members(~smooth & ((1 << G.size) - 1)))
    return smooth


def induced_sub_biframe(iota: FrameHom, budget: int | None = None) -> Biframe:
    """Image of the congruence biframe of the source inside that of the target."""
    if len(set(iota.map)) != iota.source.size:
        raise NotInjective("inclusion is not injective", witness=iota.map)
    A = assemble(iota.source, budget)
    Bt = assemble(iota.target, budget)
    Ci = functor_on_hom(iota, A, Bt)
    image = mask_of(Ci.map)
    S, inc = subframe(Bt.frame, image)
    pos = {e: i for i, e in enumerate(inc.map)}
    out = Biframe(S, mask_of(pos[Ci.map[i]] for i in bits(A.part1)), mask_of(pos[Ci.map[i]] for i in bits(A.part2)))
    if not is_strictly_zero_dimensional(out):
        raise InvariantViolation("induced biframe is not strictly zero-dimensional")
    return out


def iter_biframe_homs(B1: Biframe, B2: Biframe) -> Iterator[BiframeHom]:
    for f in iter_homs(B1.total, B2.total):
        if all((B2.part1 >> f.map[x]) & 1 for x in bits(B1.part1)) and \
                all((B2.part2 >> f.map[x]) & 1 for x in bits(B1.part2)):
            yield BiframeHom(B1, B2, f)


def iter_biframe_isomorphisms(B1: Biframe, B2: Biframe) -> Iterator[BiframeHom]:
    if B1.part1.bit_count() != B2.part1.bit_count() or B1.part2.bit_count() != B2.part2.bit_count():
        return
    for f in iter_isomorphisms(B1.total, B2.total):
        if mask_of(f.map[x] for x in bits(B1.part1)) == B2.part1 and \
                mask_of(f.map[x] for x in bits(B1.part2)) == B2.part2:
            yield BiframeHom(B1, B2, f)


def biframes_isomorphic(B1: Biframe, B2: Biframe) -> bool:
    return next(iter_biframe_isomorphisms(B1, B2), None) is not None


def adjunction_correspondence(L: Frame, B: Biframe, budget: int | None = None) -> tuple[int, int, bool]:
    """Compare homs from ``L`` into the first part with biframe homs out of the congruence biframe.

    Returns (number of frame homs, number of biframe homs, whether
    precomposing with the closed-congruence embedding is a bijection).
    """
    A = assemble(L, budget)
    CB = Biframe(A.frame, A.part1, A.part2)
    L1, inc = B.part_frame(1)
    pos = {e: i for i, e in enumerate(inc.map)}
    frame_homs = {f.map for f in iter_homs(L, L1)}
    restricted = []
    for g in iter_biframe_homs(CB, B):
        restricted.append(tuple(pos[g.hom.map[A.nabla_map[x]]] for x in range(L.size)))
    bijective = len(set(restricted)) == len(restricted) and set(restricted) == frame_homs
    return len(frame_homs), len(restricted), bijective

