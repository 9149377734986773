"""Property suites run over the pinned corpus.

Each property is a function of one instance (a lattice, a space, or an
ordered pair of small lattices) that records every individual check in a
:class:`Tally`. Jobs may run in worker processes; results are merged in
job order, so the report does not depend on the worker count.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import assembly as asm
from . import biframe as bf
from . import congruence as cg
from . import oracles
from . import spatial as sp
from .catalog import corpus_hash, corpus_lattices, corpus_spaces
from .errors import FrameCalcError, NotT0
from .order import (
    Frame,
    FrameHom,
    bits,
    compose,
    completely_below_relation,
    dense_elements,
    frame_from_poset,
    hom_is_surjective,
    hom_kernel,
    hom_right_adjoint,
    hom_violation,
    identity_hom,
    is_boolean,
    is_isomorphic,
    is_zero_dimensional,
    iter_homs,
    mask_of,
    members,
    rather_below,
)

SUITES = ("formulas", "nuclei", "assembly", "clear-dense", "biframe", "spatial")
ORACLE_PARTITION_LIMIT = 9
PAIR_LIMIT = 4


class Tally:
    def __init__(self):
        self.checks = 0
        self.witness = None

    def __call__(self, ok: bool, witness=None) -> bool:
        self.checks += 1
        if not ok and self.witness is None:
            self.witness = witness if witness is not None else "failed"
        return ok


@dataclass(frozen=True)
class Prop:
    suite: str
    name: str
    kind: str
    run: Callable
    size_cap: int | None = None
    info: bool = False


PROPS: dict[tuple[str, str], Prop] = {}


def prop(suite: str, name: str, kind: str = "lattice", size_cap: int | None = None, info: bool = False):
    def register(fn):
        PROPS[(suite, name)] = Prop(suite, name, kind, fn, size_cap, info)
        return fn
    return register


# ---------------------------------------------------------------------------
# Shared per-process caches
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def congruences_of(F: Frame) -> tuple[cg.Congruence, ...]:
    return tuple(asm.enumerate_congruences(F))


@lru_cache(maxsize=None)
def assembly_of(F: Frame) -> asm.Assembly:
    return asm.assemble(F)


@lru_cache(maxsize=None)
def oracle_nuclei(F: Frame) -> frozenset | None:
    if F.size > ORACLE_PARTITION_LIMIT:
        return None
    return frozenset(oracles.partition_nu(F, p) for p in oracles.all_congruence_partitions(F))


@lru_cache(maxsize=None)
def homs_between(F: Frame, G: Frame) -> tuple[FrameHom, ...]:
    return tuple(iter_homs(F, G))


def interval_frame(F: Frame, lo: int, hi: int) -> Frame:
    return frame_from_poset(F.poset.induced(members(F.interval(lo, hi))))


def generation_oracle(F: Frame, pairs) -> tuple[int, ...]:
    if F.size <= 8:
        return oracles.least_congruence_containing(F, pairs)
    return oracles.generated_nu(F, pairs)


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------


@prop("formulas", "heyting-adjunction")
def _heyting(F: Frame, t: Tally, ctx):
    n = F.size
    for a in range(n):
        for b in range(n):
            ab = F.arrow(a, b)
            t(ab == oracles.arrow_brute(F, a, b), ("arrow", a, b))
            for c in range(n):
                t(F.le(c, ab) == F.le(F.meet(a, c), b), ("adjunction", a, b, c))


@prop("formulas", "pseudocomplement-laws")
def _pc_laws(F: Frame, t: Tally, ctx):
    pc, m, j = F.pc, F.meet, F.join
    for a in range(F.size):
        t(pc(a) == oracles.pseudocomplement_brute(F, a), ("pc", a))
        t(F.le(a, pc(pc(a))), ("a<=a**", a))
        t(pc(pc(pc(a))) == pc(a), ("a***=a*", a))
        for b in range(F.size):
            t(pc(j(a, b)) == m(pc(a), pc(b)), ("(avb)*", a, b))
            t(pc(pc(m(a, b))) == m(pc(pc(a)), pc(pc(b))), ("(a^b)**", a, b))


@prop("formulas", "element-classes")
def _element_classes(F: Frame, t: Tally, ctx):
    t(set(bits(F.complemented)) == oracles.complemented_brute(F), "complemented")
    t(set(bits(F.primes)) == oracles.primes_brute(F), "primes")
    t(set(bits(F.join_irreducibles)) == oracles.join_irreducibles_brute(F), "join-irreducibles")
    t(set(bits(dense_elements(F))) == {a for a in range(F.size) if oracles.pseudocomplement_brute(F, a) == F.bottom},
      "dense")
    t(not is_zero_dimensional(F) or is_boolean(F), "zero-dimensional implies Boolean")
    for a in range(F.size):
        t(F.meet_all(p for p in bits(F.primes) if F.le(a, p)) == a, ("meet of primes", a))


@prop("formulas", "below-relations")
def _below(F: Frame, t: Tally, ctx):
    n = F.size
    rb = [mask_of(b for b in range(n) if F.join(oracles.pseudocomplement_brute(F, a), b) == F.top) for a in range(n)]
    for a in range(n):
        for b in range(n):
            t(rather_below(F, a, b) == bool((rb[a] >> b) & 1), ("rather-below", a, b))
    cb = completely_below_relation(F)
    for a in range(n):
        t(cb[a] & ~rb[a] == 0, ("inside rather-below", a))
        for b in bits(cb[a]):
            t(any((cb[c] >> b) & 1 for c in bits(cb[a])), ("interpolates", a, b))


@prop("formulas", "nabla-delta")
def _nabla_delta(F: Frame, t: Tally, ctx):
    for a in range(F.size):
        N, D = cg.nabla(F, a), cg.delta(F, a)
        t(N.nu == oracles.nabla_formula(F, a), ("nabla formula", a))
        t(D.nu == oracles.delta_formula(F, a), ("delta formula", a))
        t(N == cg.congruence_from_pairs(F, [(F.bottom, a)]), ("nabla generated", a))
        t(D == cg.congruence_from_pairs(F, [(a, F.top)]), ("delta generated", a))
        if F.size <= 8:
            t(N.nu == oracles.generated_nu(F, [(F.bottom, a)]), ("nabla oracle", a))
            t(D.nu == oracles.generated_nu(F, [(a, F.top)]), ("delta oracle", a))


@prop("formulas", "principal")
def _principal(F: Frame, t: Tally, ctx):
    for a in range(F.size):
        for b in range(F.size):
            P = cg.principal_congruence(F, a, b)
            t(P == cg.congruence_from_pairs(F, [(a, b)]), ("principal generated", a, b))
            if F.size <= 8 and F.le(a, b):
                t(P.nu == oracles.generated_nu(F, [(a, b)]), ("principal oracle", a, b))


@prop("formulas", "join-with-nabla-delta")
def _join_with(F: Frame, t: Tally, ctx):
    for C in congruences_of(F):
        for a in range(F.size):
            t(cg.join_with_nabla(C, a) == cg.join(C, cg.nabla(F, a)), ("join with nabla", C.nu, a))
            t(cg.join_with_delta(C, a) == cg.join(C, cg.delta(F, a)), ("join with delta", C.nu, a))
    if F.size <= 6:
        for C in congruences_of(F):
            pairs = list(enumerate(C.nu))
            for a in range(F.size):
                t(cg.join_with_nabla(C, a).nu == oracles.generated_nu(F, pairs + [(F.bottom, a)]),
                  ("join with nabla oracle", C.nu, a))
                t(cg.join_with_delta(C, a).nu == oracles.generated_nu(F, pairs + [(a, F.top)]),
                  ("join with delta oracle", C.nu, a))


@prop("formulas", "complements")
def _complements(F: Frame, t: Tally, ctx):
    for a in range(F.size):
        N, D = cg.nabla(F, a), cg.delta(F, a)
        t(cg.meet(N, D) == cg.diagonal(F), ("meet", a))
        t(cg.join(N, D) == cg.all_pairs(F), ("join", a))


@prop("formulas", "closed-open-identities")
def _identities(F: Frame, t: Tally, ctx):
    n = F.size
    nab = [cg.nabla(F, a) for a in range(n)]
    dl = [cg.delta(F, a) for a in range(n)]
    t(len(set(nab)) == n, "nabla injective")
    t(len(set(dl)) == n, "delta injective")
    for a in range(n):
        for b in range(n):
            t(nab[F.meet(a, b)] == cg.meet(nab[a], nab[b]), ("nabla meet", a, b))
            t(nab[F.join(a, b)] == cg.join(nab[a], nab[b]), ("nabla join", a, b))
            t(dl[F.meet(a, b)] == cg.join(dl[a], dl[b]), ("delta meet", a, b))
            t(dl[F.join(a, b)] == cg.meet(dl[a], dl[b]), ("delta join", a, b))
            if F.le(a, b):
                t(nab[a].le(nab[b]), ("nabla monotone", a, b))
                t(dl[b].le(dl[a]), ("delta reverses", a, b))
    t(cg.join_all(F, nab) == nab[F.top], "nabla of all joins")
    t(cg.meet_all(F, dl) == dl[F.top], "delta of all joins")


@prop("formulas", "quotient-lemmas")
def _quotient_lemmas(F: Frame, t: Tally, ctx):
    for a in range(F.size):
        t(is_isomorphic(cg.quotient(F, cg.nabla(F, a))[0], interval_frame(F, a, F.top)), ("up-set", a))
        t(is_isomorphic(cg.quotient(F, cg.delta(F, a))[0], interval_frame(F, F.bottom, a)), ("down-set", a))
    t(is_isomorphic(cg.quotient(F, cg.diagonal(F))[0], F), "diagonal quotient")
    for C in congruences_of(F):
        Q, q = cg.quotient(F, C)
        for a in range(F.size):
            left = cg.quotient(Q, cg.nabla(Q, q.map[a]))[0]
            right = cg.quotient(F, cg.join(C, cg.nabla(F, a)))[0]
            t(is_isomorphic(left, right), ("iterated quotient", C.nu, a))
            for b in range(F.size):
                same = cg.join_with_nabla(C, a) == cg.join_with_nabla(C, b)
                t(same == C.related(a, b), ("nabla join separates", C.nu, a, b))


@prop("formulas", "closure-operator")
def _closure(F: Frame, t: Tally, ctx):
    congs = congruences_of(F)
    for C in congs:
        K = cg.closure(C)
        t(K.le(C), ("deflationary", C.nu))
        t(cg.closure(K) == K, ("idempotent", C.nu))
        for b in range(F.size):
            t(cg.nabla(F, b).le(C) == F.le(b, C.nu[F.bottom]), ("largest closed below", C.nu, b))
        for D in congs:
            if C.le(D):
                t(K.le(cg.closure(D)), ("monotone", C.nu, D.nu))
            t(cg.closure(cg.meet(C, D)) == cg.meet(K, cg.closure(D)), ("meets", C.nu, D.nu))


def _minimise_pairs(F: Frame, pairs: list, fails) -> list:
    # Greedy: drop pairs one at a time while the failure persists.
    i = 0
    while i < len(pairs):
        trial = pairs[:i] + pairs[i + 1:]
        if fails(trial):
            pairs = trial
        else:
            i += 1
    return pairs


@prop("formulas", "random-pair-sets")
def _random_pairs(F: Frame, t: Tally, ctx):
    rng = random.Random(f"{ctx.seed}:{F.name}")
    for trial in range(8):
        k = rng.randint(0, 3)
        pairs = [(rng.randrange(F.size), rng.randrange(F.size)) for _ in range(k)]

        def fails(ps):
            return cg.congruence_from_pairs(F, ps).nu != generation_oracle(F, ps)

        if fails(pairs):
            t(False, ("pairs", _minimise_pairs(F, pairs, fails)))
        else:
            t(True)


@prop("formulas", "hom-adjoints", size_cap=8)
def _hom_adjoints(F: Frame, t: Tally, ctx):
    for f in homs_between(F, F):
        r = hom_right_adjoint(f)
        for x in range(F.size):
            t(F.le(x, r[f.map[x]]), ("unit", f.map, x))
            t(F.le(f.map[r[x]], x), ("counit", f.map, x))
            for y in range(F.size):
                t(F.le(f.map[x], y) == F.le(x, r[y]), ("galois", f.map, x, y))
        K = hom_kernel(f)
        t(K.nu == oracles.formula_nu(F, lambda x, y: f.map[x] == f.map[y]), ("kernel", f.map))


# ---------------------------------------------------------------------------
# nuclei
# ---------------------------------------------------------------------------


def produced_congruences(F: Frame) -> list[cg.Congruence]:
    n = F.size
    out = list(congruences_of(F))
    out += [cg.nabla(F, a) for a in range(n)] + [cg.delta(F, a) for a in range(n)]
    out += [cg.clear_congruence(F, a) for a in range(n)] + [cg.largest_dense(F)]
    out += [cg.principal_congruence(F, a, b) for a in range(n) for b in range(n)]
    for C in congruences_of(F):
        out.append(cg.closure(C))
        out.append(cg.join_with_largest_dense(C))
        for a in range(n):
            out.append(cg.join_with_nabla(C, a))
            out.append(cg.join_with_delta(C, a))
    return out


@prop("nuclei", "nucleus-laws")
def _nucleus_laws(F: Frame, t: Tally, ctx):
    for C in produced_congruences(F):
        w = cg.nucleus_violation(F, C.nu)
        t(w is None, (C.nu, w))
        blocks = C.blocks()
        for b in blocks:
            t(F.interval(F.meet_all(bits(b)), F.join_all(bits(b))) == b, ("class is an interval", C.nu, members(b)))


@prop("nuclei", "all-congruences")
def _all_congruences(F: Frame, t: Tally, ctx):
    got = frozenset(C.nu for C in congruences_of(F))
    t(len(got) == 1 << F.join_irreducibles.bit_count(), ("count", len(got)))
    expected = oracle_nuclei(F)
    if expected is not None:
        t(got == expected, ("oracle", sorted(got ^ expected)[:1]))


@prop("nuclei", "fixpoint-monotonicity")
def _fixpoints(F: Frame, t: Tally, ctx):
    congs = congruences_of(F)
    for C in congs:
        for D in congs:
            if all(F.le(x, y) for x, y in zip(C.nu, D.nu)):
                t(D.fixed_points() & ~C.fixed_points() == 0, ("fix", C.nu, D.nu))


@prop("nuclei", "subspace-nuclei", kind="space")
def _subspace_nuclei(X: sp.FiniteSpace, t: Tally, ctx):
    O, es = sp.subspace_congruences(X)
    for A, E in enumerate(es):
        t(cg.nucleus_violation(O, E.nu) is None, ("subspace", A))
        t(E.nu == oracles.subspace_nu(list(X.opens), A), ("subspace oracle", A))


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------


@prop("assembly", "assembly-structure")
def _assembly_structure(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    G = A.frame
    t(G.size == 1 << F.join_irreducibles.bit_count(), ("size", G.size))
    expected = oracle_nuclei(F)
    if expected is not None:
        t(G.size == len(expected), ("oracle count", G.size, len(expected)))
    t(is_boolean(G) and is_zero_dimensional(G), "Boolean")
    if F.size <= 12:
        by_closure = [C.nu for C in asm.enumerate_congruences_by_closure(F)]
        t(by_closure == [C.nu for C in A.congruences], "closure of principal congruences")
    for i, C in enumerate(A.congruences):
        for j, D in enumerate(A.congruences):
            pointwise = all(F.le(x, y) for x, y in zip(C.nu, D.nu))
            t(G.le(i, j) == pointwise, ("order", i, j))
    nab = A.nabla_hom
    t(hom_violation(nab) is None, "nabla is a hom")
    t(len(set(A.nabla_map)) == F.size, "nabla injective")
    for a in range(F.size):
        t(G.meet(A.nabla_map[a], A.delta_map[a]) == G.bottom, ("complement meet", a))
        t(G.join(A.nabla_map[a], A.delta_map[a]) == G.top, ("complement join", a))


@prop("assembly", "functor", kind="pair")
def _functor(pair, t: Tally, ctx):
    L, M = pair
    A, B = assembly_of(L), assembly_of(M)
    t(asm.functor_on_hom(identity_hom(L), A, A).map == tuple(range(A.frame.size)), "identity")
    for f in homs_between(L, M):
        Cf = asm.functor_on_hom(f, A, B)
        for x in range(L.size):
            t(Cf.map[A.nabla_map[x]] == B.nabla_map[f.map[x]], ("commutes with nabla", f.map, x))
        t(asm.functor_kernel_check(f, A, B), ("kernel closure", f.map))
        if hom_is_surjective(f):
            t(hom_kernel(Cf) == cg.nabla(A.frame, A.index[hom_kernel(f)]), ("surjective kernel", f.map))
        for g in homs_between(M, M):
            left = asm.functor_on_hom(compose(g, f), A, B)
            right = compose(asm.functor_on_hom(g, B, B), Cf)
            t(left.map == right.map, ("functorial", f.map, g.map))


@prop("assembly", "universal-property", kind="pair")
def _universal(pair, t: Tally, ctx):
    L, M = pair
    A = assembly_of(L)
    by_restriction: dict[tuple, int] = {}
    for g in homs_between(A.frame, M):
        key = tuple(g.map[A.nabla_map[x]] for x in range(L.size))
        by_restriction[key] = by_restriction.get(key, 0) + 1
    for f in homs_between(L, M):
        complemented = all((M.complemented >> y) & 1 for y in f.map)
        count = by_restriction.get(f.map, 0)
        if complemented:
            t(count == 1, ("exactly one extension", f.map, count))
            ext = asm.extend_along_nabla(A, f)
            t(ext is not None and tuple(ext.map[A.nabla_map[x]] for x in range(L.size)) == f.map,
              ("formula extension", f.map))
        else:
            t(count == 0, ("no extension", f.map, count))
    t(all(c == 1 for c in by_restriction.values()), "nabla is epic")


@prop("assembly", "quotient-iso", size_cap=6)
def _quotient_iso(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    for C in A.congruences:
        try:
            asm.quotient_iso(F, C, assembly=A)
            t(True)
        except FrameCalcError as e:
            t(False, (C.nu, str(e)))


@prop("assembly", "tower")
def _tower(F: Frame, t: Tally, ctx):
    T = asm.tower(F, 3)
    t(T.stable_at is not None and T.stable_at <= 1, ("stable", T.sizes))
    t((T.stable_at == 0) == is_boolean(F), ("stable at 0 iff Boolean", T.sizes))
    t(T.sizes[1] == 1 << F.join_irreducibles.bit_count(), ("first size", T.sizes))


@prop("assembly", "kernel-lemma", size_cap=8)
def _kernel_lemma(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    G = A.frame
    if G.size > 32:
        return
    for K in congruences_of(G):
        _, q = cg.quotient(G, K)
        t(asm.kernel_lemma_check(q, A), ("kernel lemma", K.nu))


# ---------------------------------------------------------------------------
# clear-dense
# ---------------------------------------------------------------------------


@prop("clear-dense", "largest-dense")
def _largest_dense(F: Frame, t: Tally, ctx):
    D = cg.largest_dense(F)
    t(D.nu == oracles.dense_formula(F), "formula")
    t(D.nu == oracles.formula_nu(F, lambda x, y: F.pc(F.pc(x)) == F.pc(F.pc(y))), "kernel of double pseudocomplement")
    t(cg.is_dense(D), "dense")
    t(is_boolean(cg.quotient(F, D)[0]), "Boolean quotient")
    for C in congruences_of(F):
        t(cg.is_dense(C) == C.le(D), ("dense iff below D", C.nu))
        t(cg.is_dense_in(C, cg.diagonal(F)) == cg.is_dense(C), ("dense in diagonal", C.nu))
    above = [i for i, C in enumerate(assembly_of(F).congruences) if D.le(C)]
    G = assembly_of(F).frame
    interval = frame_from_poset(G.poset.induced(above))
    t(is_isomorphic(interval, cg.quotient(F, D)[0]), "congruences above D")


@prop("clear-dense", "clear-congruence")
def _clear(F: Frame, t: Tally, ctx):
    congs = congruences_of(F)
    for a in range(F.size):
        P = cg.clear_congruence(F, a)
        t(P.nu == oracles.clear_formula(F, a), ("formula", a))
        t(P.nu == oracles.formula_nu(F, lambda x, y: oracles.arrow_brute(F, x, a) == oracles.arrow_brute(F, y, a)),
          ("kernel of arrow", a))
        same = [C for C in congs if cg.closure(C) == cg.nabla(F, a)]
        t(P in same and all(C.le(P) for C in same), ("largest with this closure", a))
        t(cg.is_clear(P), ("is clear", a))


@prop("clear-dense", "clear-decomposition")
def _decomposition(F: Frame, t: Tally, ctx):
    for C in congruences_of(F):
        idx = cg.clear_decomposition(C)
        t(cg.meet_all(F, (cg.clear_congruence(F, a) for a in bits(idx))) == C, ("meet", C.nu))


@prop("clear-dense", "join-with-largest-dense")
def _join_dense(F: Frame, t: Tally, ctx):
    D = cg.largest_dense(F)
    for C in congruences_of(F):
        t(cg.join_with_largest_dense(C) == cg.join(D, C), ("join", C.nu))


@prop("clear-dense", "clear-iff-boolean")
def _clear_boolean(F: Frame, t: Tally, ctx):
    every_quotient_clear = True
    for C in congruences_of(F):
        Q = cg.quotient(F, C)[0]
        t(is_boolean(Q) == cg.is_clear(C), ("quotient Boolean iff clear", C.nu))
        t(is_boolean(Q) == (cg.largest_dense(Q) == cg.diagonal(Q)), ("Boolean iff D is 0", C.nu))
        every_quotient_clear &= cg.is_clear(C)
    t(every_quotient_clear == is_boolean(F), "every quotient clear iff Boolean")


@prop("clear-dense", "beazer-macnab")
def _beazer(F: Frame, t: Tally, ctx):
    for a in range(F.size):
        try:
            b = cg.beazer_macnab_witness(F, a)
        except FrameCalcError as e:
            t(False, (a, str(e)))
            continue
        P = cg.clear_congruence(F, a)
        cands = [c for c in range(F.size) if F.le(a, c) and P.related(c, F.top)]
        t(b in cands and all(F.le(b, c) for c in cands), ("least", a, b))
        t(P == cg.join(cg.nabla(F, a), cg.delta(F, b)), ("join", a, b))


@prop("clear-dense", "rare")
def _rare(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    G = A.frame
    for i, C in enumerate(A.congruences):
        definitional = G.pc(i) == G.bottom
        meets_all = all(cg.meet(C, D) != cg.diagonal(F) for D in A.congruences if D != cg.diagonal(F))
        t(cg.is_rare(C) == definitional == meets_all, ("rare", C.nu))
        t(cg.is_rare(C) == (C == cg.all_pairs(F)), ("only the top is rare", C.nu))


# ---------------------------------------------------------------------------
# biframe
# ---------------------------------------------------------------------------


def congruence_biframe_of(F: Frame) -> bf.Biframe:
    return asm.congruence_biframe(assembly_of(F))


@prop("biframe", "congruence-biframe")
def _cb(F: Frame, t: Tally, ctx):
    B = congruence_biframe_of(F)
    t(bf.biframe_violation(B) is None, "biframe")
    t(bf.str0d_violation(B) is None, "strictly zero-dimensional")
    only = bf.str0d_biframes_over(F)
    t(len(only) == 1 and bf.biframes_isomorphic(only[0], B), "unique str0d biframe")
    t(bf.smooth_congruences(assembly_of(F)) == (1 << B.total.size) - 1, "smooth")


@prop("biframe", "coreflection")
def _coreflection(F: Frame, t: Tally, ctx):
    B = congruence_biframe_of(F)
    c = bf.coreflection(B)
    chi = c.chi.hom
    t(len(set(chi.map)) == B.total.size, "iso on a congruence biframe")
    G = chi.source
    r = c.right_adjoint
    nu = tuple(r[chi.map[i]] for i in range(G.size))
    t(cg.nucleus_violation(G, nu) is None, "adjoint composite is a nucleus")
    injective, complete = bf.congruential_routes(B)
    t(injective and complete, ("routes", injective, complete))
    t(bf.hom_is_mono(c.chi) and bf.hom_is_extremal_epi(c.chi), "iso is mono and extremal epi")


@prop("biframe", "clear-elements")
def _clear_elements(F: Frame, t: Tally, ctx):
    B = congruence_biframe_of(F)
    c = bf.coreflection(B)
    r = c.right_adjoint
    A1 = c.assembly
    clear = bf.clear_elements(B)
    for x in range(B.total.size):
        C = A1.congruences[r[x]]
        t(bool((clear >> x) & 1) == cg.is_clear(C), ("clear element", x))
        t(r[bf.biframe_closure(B, x)] == A1.index[cg.closure(C)], ("closure commutes", x))
    t((clear >> B.total.top) & 1 == 1, "top is clear")
    closures = {bf.biframe_closure(B, x) for x in bits(clear)}
    t(all(p in closures for p in bits(B.part1)), "no missing clear elements")


@prop("biframe", "closed-quotients")
def _closed_quotients(F: Frame, t: Tally, ctx):
    B = congruence_biframe_of(F)
    T = B.total
    for a in bits(B.part1):
        try:
            Q = bf.closed_quotient(B, a)
        except FrameCalcError as e:
            t(False, (a, str(e)))
            continue
        t(bf.is_congruential(Q), ("congruential", a))
        _, q = cg.quotient(T, cg.nabla(T, a))
        h = bf.BiframeHom(B, Q, q)
        t(bf.hom_is_extremal_epi(h), ("extremal epi", a))
        t(bf.hom_is_mono(h) == (a == T.bottom) == bf.first_part_injective(h), ("mono", a))


@prop("biframe", "adjunction", kind="pair")
def _adjunction(pair, t: Tally, ctx):
    L, M = pair
    B = congruence_biframe_of(M)
    n_frame, n_bi, ok = bf.adjunction_correspondence(L, B)
    t(ok, ("bijection", n_frame, n_bi))


@prop("biframe", "induced-sub-biframes", kind="pair")
def _induced(pair, t: Tally, ctx):
    L, M = pair
    for f in homs_between(L, M):
        if len(set(f.map)) != L.size:
            continue
        try:
            S = bf.induced_sub_biframe(f)
            t(True)
        except FrameCalcError as e:
            t(False, (f.map, str(e)))
            continue
        t(bf.biframes_isomorphic(S, congruence_biframe_of(L)), ("iso to congruence biframe", f.map))


# ---------------------------------------------------------------------------
# spatial
# ---------------------------------------------------------------------------


@prop("spatial", "spectrum")
def _spectrum(F: Frame, t: Tally, ctx):
    S = sp.sigma(F)
    t(S.space.points == F.primes.bit_count(), "points are primes")
    for a in range(F.size):
        t(S.open_of_element[a] == mask_of(i for i, p in enumerate(S.prime_of_point) if not F.le(a, p)), ("U_a", a))
    unit = sp.spectrum_unit(F, S)
    t(len(set(unit.map)) == F.size == unit.target.size, "unit bijective")
    t(hom_violation(unit) is None, "unit is a hom")


@prop("spatial", "prime-congruences")
def _prime_congruences(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    t(sp.prime_congruences(A) == sp.clear_primes(A), ("primes", members(sp.prime_congruences(A))))
    for p in bits(F.primes):
        t(cg.clear_congruence(F, p).nu == oracles.prime_ideal_formula(F, p), ("membership", p))
    t(sp.spatial_congruences(A) == (1 << A.frame.size) - 1, "all spatial")
    for C in A.congruences:
        t(sp.spatial_reflection_of_quotient(A, C) == C, ("spatial reflection", C.nu))


@prop("spatial", "skula-iso")
def _skula_iso(F: Frame, t: Tally, ctx):
    A = assembly_of(F)
    t(sp.skula_iso_check(F, assembly=A), "iso")
    S = sp.sigma(F)
    phi = sp.skula_map(A, S, sp.skula_biframe(S.space))
    t(hom_kernel(phi) == cg.diagonal(A.frame), "kernel is zero")


@prop("spatial", "skula-naturality", kind="pair")
def _naturality(pair, t: Tally, ctx):
    L, M = pair
    A, B = assembly_of(L), assembly_of(M)
    for f in homs_between(L, M):
        t(sp.skula_naturality_check(f, A, B), ("square", f.map))


@prop("spatial", "td-separation", kind="space")
def _td(X: sp.FiniteSpace, t: Tally, ctx):
    t(sp.is_TD(X) == oracles.td_brute(X.points, list(X.opens)), "T_D")
    t(sp.td_congruence_lemma_check(X), ("separation", sp.is_TD(X), sp.td_separation(X)))


@prop("spatial", "sober", kind="space")
def _sober(X: sp.FiniteSpace, t: Tally, ctx):
    t0 = sp.is_T0(X)
    Y, sob = sp.sobrification(X)
    t(sp.is_sober(X) == t0, ("sober iff T0", t0))
    if t0:
        image = {u: mask_of(sob[x] for x in bits(u)) for u in X.opens}
        t(set(image.values()) == set(Y.opens), "sob is a homeomorphism")
        B = sp.skula_biframe(X)
        t(bf.str0d_violation(B) is None, "Skula biframe")
        t(bf.is_congruential(B), "Skula congruential")
    else:
        try:
            sp.skula_biframe(X)
            t(False, "NotT0 expected")
        except NotT0:
            t(True)


@prop("spatial", "subspace-union", kind="space")
def _subspace_union(X: sp.FiniteSpace, t: Tally, ctx):
    _, es = sp.subspace_congruences(X)
    nus = [E.nu for E in es]
    # Up to four points every pair of subsets is tried. Beyond that, adding one
    # point at a time is enough: by induction each E_A is the meet of its
    # singletons, which gives the identity for all pairs.
    if X.points <= 4:
        pairs = [(a, b) for a in range(len(es)) for b in range(a + 1, len(es))]
    else:
        pairs = [(a, 1 << x) for a in range(len(es)) for x in range(X.points) if not (a >> x) & 1]
    for a, b in pairs:
        na, nb, nab = nus[a], nus[b], nus[a | b]
        # E_A ^ E_B relates x, y iff both nuclei agree on them
        groups: dict = {}
        for x in range(len(na)):
            groups.setdefault((na[x], nb[x]), nab[x])
        ok = all(groups[(na[x], nb[x])] == nab[x] for x in range(len(na))) and \
            len(groups) == len(set(nab))
        t(ok, ("union", a, b))


@prop("spatial", "subspace-intersection-counterexample", kind="space", size_cap=3, info=True)
def _subspace_intersection(X: sp.FiniteSpace, t: Tally, ctx):
    w = sp.intersection_join_counterexample(X)
    t(w is None, w)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Context:
    seed: int = 0


@lru_cache(maxsize=None)
def lattice_instances(max_size: int) -> tuple[Frame, ...]:
    return tuple(F for F in corpus_lattices() if F.size <= max_size)


@lru_cache(maxsize=None)
def space_instances(max_size: int) -> tuple[sp.FiniteSpace, ...]:
    return tuple(X for X in corpus_spaces(min(max_size, 6)) if X.points <= max_size)


@lru_cache(maxsize=None)
def pair_instances(max_size: int) -> tuple[tuple[Frame, Frame], ...]:
    small = [F for F in lattice_instances(max_size) if F.size <= PAIR_LIMIT]
    return tuple((L, M) for L in small for M in small)


def instances_for(p: Prop, max_size: int) -> list:
    cap = max_size if p.size_cap is None else min(max_size, p.size_cap)
    if p.kind == "lattice":
        return list(lattice_instances(cap))
    if p.kind == "space":
        return list(space_instances(cap))
    return list(pair_instances(cap))


def instance_name(p: Prop, inst) -> str:
    if p.kind == "pair":
        return f"{inst[0].name}->{inst[1].name}"
    return inst.name


def _run_one(job) -> tuple[int, object]:
    suite, name, index, max_size, seed = job
    p = PROPS[(suite, name)]
    inst = instances_for(p, max_size)[index]
    t = Tally()
    try:
        p.run(inst, t, Context(seed))
    except FrameCalcError as e:
        t(False, f"{type(e).__name__}: {e}")
    return t.checks, t.witness


def _run_chunk(jobs) -> list[tuple[int, object]]:
    return [_run_one(j) for j in jobs]


@dataclass
class PropertyReport:
    suite: str
    name: str
    instances: int
    checks: int
    failure: tuple[str, object] | None
    info: bool


def selected_props(suite: str) -> list[Prop]:
    names = SUITES if suite == "all" else (suite,)
    return [p for (s, _), p in PROPS.items() if s in names]


def run_suite(suite: str = "all", max_size: int = 6, seed: int = 0, workers: int = 1) -> list[PropertyReport]:
    props = selected_props(suite)
    jobs = []
    for p in props:
        for i in range(len(instances_for(p, max_size))):
            jobs.append((p.suite, p.name, i, max_size, seed))
    if workers <= 1:
        results = _run_chunk(jobs)
    else:
        # round-robin chunks keep per-worker load even; results are re-slotted by job position
        chunks = [jobs[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
        results = [None] * len(jobs)
        for k, part in enumerate(parts):
            for offset, res in enumerate(part):
                results[k + offset * workers] = res
    reports = []
    pos = 0
    for p in props:
        insts = instances_for(p, max_size)
        checks = 0
        failure = None
        for inst in insts:
            n, w = results[pos]
            pos += 1
            checks += n
            if w is not None and failure is None:
                failure = (instance_name(p, inst), w)
        reports.append(PropertyReport(p.suite, p.name, len(insts), checks, failure, p.info))
    return reports


def format_reports(reports: list[PropertyReport], suite: str, max_size: int, seed: int) -> str:
    lines = [f"# suite={suite} max-size={max_size} seed={seed} corpus={corpus_hash()}"]
    for r in reports:
        head = f"{r.suite}/{r.name} instances={r.instances} checks={r.checks}"
        if r.info:
            found = "none" if r.failure is None else f"{r.failure[0]} {r.failure[1]!r}"
            lines.append(f"INFO {head} counterexample={found}")
        elif r.failure is None:
            lines.append(f"PASS {head}")
        else:
            lines.append(f"FAIL {head} instance={r.failure[0]} witness={r.failure[1]!r}")
    failed = sum(1 for r in reports if r.failure is not None and not r.info)
    lines.append(f"# {len(reports) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"


def fixture_report(C_nu, F: Frame, path: str) -> PropertyReport:
    t = Tally()
    w = cg.nucleus_violation(F, C_nu)
    t(w is None, w)
    return PropertyReport("nuclei", "fixture-nucleus", 1, t.checks, None if w is None else (path, w), False)
