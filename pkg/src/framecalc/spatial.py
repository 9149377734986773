"""Finite spaces, spectra, and the Skula biframe.

Points are indices, opens are bit-sets over the points. The specialisation
order is ``x <= y`` iff every open containing ``x`` also contains ``y``,
which makes opens the up-closed sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import congruence as cg
from .assembly import Assembly, assemble, functor_on_hom
from .biframe import Biframe, is_strictly_zero_dimensional, str0d_violation
from .errors import InvariantViolation, NotASpace, NotT0
from .order import (
    Frame,
    FrameHom,
    bits,
    frame_from_sets,
    hom_right_adjoint,
    hom_violation,
    mask_of,
    members,
    set_key,
)


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    points: int
    opens: tuple[int, ...]
    name: str = ""

    @property
    def full(self) -> int:
        return (1 << self.points) - 1

    def __repr__(self) -> str:
        return f"FiniteSpace({self.name or '?'}, points={self.points}, opens={len(self.opens)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSpace) and self.points == other.points and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((self.points, self.opens))


def _union_intersection_closure(sets: Iterable[int]) -> set[int]:
    out = set(sets)
    frontier = list(out)
    while frontier:
        fresh = set()
        current = list(out)
        for a in frontier:
            for b in current:
                for c in (a | b, a & b):
                    if c not in out:
                        fresh.add(c)
        out |= fresh
        frontier = list(fresh)
    return out


def space_from_opens(points: int, opens: Iterable[int], name: str = "") -> FiniteSpace:
    full = (1 << points) - 1
    family = sorted(set(opens), key=set_key)
    family_set = set(family)
    for u in family:
        if u & ~full:
            raise NotASpace(f"open {members(u)} mentions points outside 0..{points - 1}", witness=("range", u))
    if 0 not in family_set:
        raise NotASpace("the empty set must be open", witness=("empty",))
    if full not in family_set:
        raise NotASpace("the whole space must be open", witness=("full",))
    for i, u in enumerate(family):
        for v in family[i + 1:]:
            if u | v not in family_set:
                raise NotASpace(f"union of {members(u)} and {members(v)} is not open", witness=("union", u, v))
            if u & v not in family_set:
                raise NotASpace(f"intersection of {members(u)} and {members(v)} is not open",
                                witness=("intersection", u, v))
    return FiniteSpace(points, tuple(family), name)


def space_from_subbasis(points: int, subbasis: Iterable[int], name: str = "") -> FiniteSpace:
    full = (1 << points) - 1
    return space_from_opens(points, _union_intersection_closure(list(subbasis) + [0, full]), name)


def space_from_order(up: Sequence[int], multiplicity: Sequence[int] | None = None, name: str = "") -> FiniteSpace:
    """Space whose opens are the up-closed sets of a poset (given by up-set rows).

    With ``multiplicity`` each poset element becomes that many
    indistinguishable points, laid out consecutively.
    """
    k = len(up)
    mult = list(multiplicity) if multiplicity is not None else [1] * k
    start = [sum(mult[:i]) for i in range(k)]
    block = [((1 << mult[i]) - 1) << start[i] for i in range(k)]
    ups = [0]
    order = sorted(range(k), key=lambda i: up[i].bit_count())
    for x in order:
        above = up[x] & ~(1 << x)
        ups += [u | (1 << x) for u in ups if u & above == above]
    opens = [mask_of_blocks(u, block) for u in ups]
    return space_from_opens(sum(mult), opens, name)


def mask_of_blocks(u: int, block: Sequence[int]) -> int:
    out = 0
    for i in bits(u):
        out |= block[i]
    return out


def omega(X: FiniteSpace) -> Frame:
    labels = ["{" + ",".join(map(str, bits(u))) + "}" for u in X.opens]
    return frame_from_sets(X.opens, labels=labels, name=f"Omega({X.name})" if X.name else "")


def neighbourhood(X: FiniteSpace, x: int) -> int:
    """Smallest open containing ``x``."""
    out = X.full
    for u in X.opens:
        if (u >> x) & 1:
            out &= u
    return out


def specialization(X: FiniteSpace) -> tuple[int, ...]:
    """Row ``x`` holds every ``y`` with ``x <= y``."""
    return tuple(neighbourhood(X, x) for x in range(X.points))


def point_closure(X: FiniteSpace, x: int) -> int:
    return mask_of(y for y in range(X.points) if (neighbourhood(X, y) >> x) & 1)


def is_T0(X: FiniteSpace) -> bool:
    nb = specialization(X)
    return len(set(nb)) == X.points


def is_TD(X: FiniteSpace) -> bool:
    opens = set(X.opens)
    return all(any((u >> x) & 1 and (u & ~(1 << x)) in opens for u in X.opens) for x in range(X.points))


def t0_reflection(X: FiniteSpace) -> tuple[FiniteSpace, tuple[int, ...]]:
    nb = specialization(X)
    classes = sorted(set(nb), key=lambda n: min(y for y in range(X.points) if nb[y] == n))
    pos = {n: i for i, n in enumerate(classes)}
    point_map = tuple(pos[nb[x]] for x in range(X.points))
    opens = [mask_of(point_map[x] for x in bits(u)) for u in X.opens]
    return space_from_opens(len(classes), opens, X.name), point_map


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    space: FiniteSpace
    prime_of_point: tuple[int, ...]
    open_of_element: tuple[int, ...]


def sigma(L: Frame) -> SpectrumResult:
    """Spectrum of ``L``: points are primes, opens are ``U_a = {p : a not <= p}``."""
    prime_list = members(L.primes)
    u = tuple(mask_of(i for i, p in enumerate(prime_list) if not L.le(a, p)) for a in range(L.size))
    if len(set(u)) != L.size:
        raise InvariantViolation("a finite frame failed to be spatial", witness=u)
    X = space_from_opens(len(prime_list), u, f"Sigma({L.name})" if L.name else "")
    return SpectrumResult(X, tuple(prime_list), u)


def spectrum_unit(L: Frame, S: SpectrumResult | None = None) -> FrameHom:
    S = S or sigma(L)
    O = omega(S.space)
    pos = {u: i for i, u in enumerate(O.carrier)}
    return FrameHom(L, O, tuple(pos[u] for u in S.open_of_element))


def sobrification(X: FiniteSpace) -> tuple[FiniteSpace, tuple[int, ...]]:
    """Spectrum of the frame of opens, with each point sent to the complement of its closure."""
    O = omega(X)
    S = sigma(O)
    pos = {p: i for i, p in enumerate(S.prime_of_point)}
    index = {u: i for i, u in enumerate(O.carrier)}
    sob = tuple(pos[index[X.full & ~point_closure(X, x)]] for x in range(X.points))
    return S.space, sob


def is_sober(X: FiniteSpace) -> bool:
    Y, sob = sobrification(X)
    return len(set(sob)) == X.points == Y.points


def subspace_congruences(X: FiniteSpace) -> tuple[Frame, list[cg.Congruence]]:
    O = omega(X)
    return O, [cg.subspace_congruence(O, A, X) for A in range(1 << X.points)]


def td_separation(X: FiniteSpace) -> bool:
    """Whether ``E_A <= E_B`` forces ``B`` inside ``A`` for all subsets."""
    _, es = subspace_congruences(X)
    fixed = [E.fixed_points() for E in es]
    for a, fa in enumerate(fixed):
        for b, fb in enumerate(fixed):
            if fb & ~fa == 0 and b & ~a:
                return False
    return True


def td_congruence_lemma_check(X: FiniteSpace) -> bool:
    if X.points > 8:
        raise ValueError("subset scan limited to 8 points")
    return is_TD(X) == td_separation(X)


def union_meet_violation(X: FiniteSpace) -> tuple[int, int] | None:
    """First ``(A, B)`` with ``E_(A | B)`` different from ``E_A ^ E_B``."""
    _, es = subspace_congruences(X)
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            if es[a | b] != cg.meet(es[a], es[b]):
                return (a, b)
    return None


def intersection_join_counterexample(X: FiniteSpace) -> tuple[int, int] | None:
    """First ``(A, B)`` with ``E_(A & B)`` different from ``E_A v E_B``, if any."""
    _, es = subspace_congruences(X)
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            if es[a & b] != cg.join(es[a], es[b]):
                return (a, b)
    return None


# ---------------------------------------------------------------------------
# Skula
# ---------------------------------------------------------------------------


def skula_space(X: FiniteSpace) -> FiniteSpace:
    gens = list(X.opens) + [X.full & ~u for u in X.opens]
    return space_from_opens(X.points, _union_intersection_closure(gens), f"Sk({X.name})" if X.name else "")


def skula_biframe(X: FiniteSpace, reflect: bool = False) -> Biframe:
    """(Skula opens, original opens, closed sets) as a biframe."""
    if not is_T0(X):
        if not reflect:
            raise NotT0("the Skula biframe needs a T0 space", witness=specialization(X))
        X = t0_reflection(X)[0]
    S = skula_space(X)
    T = omega(S)
    pos = {u: i for i, u in enumerate(T.carrier)}
    part1 = mask_of(pos[u] for u in X.opens)
    part2 = mask_of(pos[X.full & ~u] for u in X.opens)
    B = Biframe(T, part1, part2)
    if not is_strictly_zero_dimensional(B):
        raise InvariantViolation("Skula biframe is not strictly zero-dimensional", witness=str0d_violation(B))
    return B


def skula_map(A: Assembly, S: SpectrumResult, SK: Biframe) -> FrameHom:
    """Congruence frame of ``L`` into the Skula frame of its spectrum.

    The closed congruence at ``a`` goes to ``U_a`` and the open one to its
    complement.
    """
    T = SK.total
    pos = {u: i for i, u in enumerate(T.carrier)}
    full = S.space.full
    u = S.open_of_element
    out = []
    for C in A.congruences:
        w = 0
        for x, t in enumerate(C.nu):
            w |= u[t] & (full & ~u[x])
        out.append(pos[w])
    return FrameHom(A.frame, T, tuple(out))


def skula_iso_check(L: Frame, budget: int | None = None, assembly: Assembly | None = None) -> bool:
    A = assembly if assembly is not None else assemble(L, budget)
    S = sigma(L)
    SK = skula_biframe(S.space)
    phi = skula_map(A, S, SK)
    if hom_violation(phi) is not None or len(set(phi.map)) != SK.total.size:
        return False
    return (mask_of(phi.map[i] for i in bits(A.part1)) == SK.part1
            and mask_of(phi.map[i] for i in bits(A.part2)) == SK.part2)


def skula_naturality_check(f: FrameHom, A: Assembly, B: Assembly) -> bool:
    """Both ways round the square from ``C(L)`` to the Skula frame of the spectrum of ``M`` agree."""
    L, M = f.source, f.target
    SL, SM = sigma(L), sigma(M)
    KL, KM = skula_biframe(SL.space), skula_biframe(SM.space)
    phi_l, phi_m = skula_map(A, SL, KL), skula_map(B, SM, KM)
    Cf = functor_on_hom(f, A, B)
    adj = hom_right_adjoint(f)
    prime_pos = {p: i for i, p in enumerate(SL.prime_of_point)}
    point_map = [prime_pos[adj[q]] for q in SM.prime_of_point]
    pos_m = {u: i for i, u in enumerate(KM.total.carrier)}

    def preimage(w: int) -> int:
        return mask_of(i for i, p in enumerate(point_map) if (w >> p) & 1)

    for i in range(A.frame.size):
        one = phi_m.map[Cf.map[i]]
        other = pos_m[preimage(KL.total.carrier[phi_l.map[i]])]
        if one != other:
            return False
    return True


# ---------------------------------------------------------------------------
# Prime and spatial congruences
# ---------------------------------------------------------------------------


def prime_congruences(A: Assembly) -> int:
    return A.frame.primes


def clear_primes(A: Assembly) -> int:
    """Indices of the clear congruences at prime elements of the base."""
    L = A.base
    return mask_of(A.index[cg.clear_congruence(L, p)] for p in bits(L.primes))


def spatial_congruences(A: Assembly) -> int:
    G = A.frame
    out = 1 << G.top
    for p in bits(G.primes):
        out |= mask_of(G.meet_table[p][c] for c in bits(out))
    if out != (1 << G.size) - 1:
        raise InvariantViolation("a congruence of a finite frame is not spatial",
                                 witness=members(((1 << G.size) - 1) & ~out))
    return out


def spatial_reflection_of_quotient(A: Assembly, C: cg.Congruence) -> cg.Congruence:
    """Meet of the clear congruences at primes that lie above ``C``."""
    L = A.base
    above = [D for D in (cg.clear_congruence(L, p) for p in bits(L.primes)) if C.le(D)]
    return cg.meet_all(L, above)
