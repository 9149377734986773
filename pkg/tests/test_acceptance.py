"""The twelve acceptance criteria, each timed and reported as one PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
Every comparison is exact; there are no numeric tolerances.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from dataclasses import dataclass
from typing import Callable

import pytest

from framecalc import assembly as asm
from framecalc import biframe as bf
from framecalc import congruence as cg
from framecalc import oracles
from framecalc import spatial as sp
from framecalc.catalog import boolean, chain, corpus_lattices, corpus_spaces
from framecalc.order import bits, is_boolean, iter_homs


class Mismatch(Exception):
    pass


def expect(condition: bool, *witness) -> None:
    if not condition:
        raise Mismatch(repr(witness))


def lattices(max_size: int | None = None):
    return [F for F in corpus_lattices() if max_size is None or F.size <= max_size]


_assemblies: dict[int, asm.Assembly] = {}


def assembly_of(F):
    if id(F) not in _assemblies:
        _assemblies[id(F)] = asm.assemble(F)
    return _assemblies[id(F)]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def formula_oracle_equivalence():
    checks = 0
    for F in lattices():
        bottom, top = F.bottom, F.top
        for a in range(F.size):
            expect(cg.nabla(F, a) == cg.congruence_from_pairs(F, [(bottom, a)]), F.name, "nabla", a)
            expect(cg.delta(F, a) == cg.congruence_from_pairs(F, [(a, top)]), F.name, "delta", a)
            for b in range(F.size):
                expect(cg.principal_congruence(F, a, b) == cg.congruence_from_pairs(F, [(a, b)]),
                       F.name, "principal", a, b)
                checks += 1
        for C in assembly_of(F).congruences:
            base = list(enumerate(C.nu))
            for a in range(F.size):
                expect(cg.join_with_nabla(C, a) == cg.congruence_from_pairs(F, base + [(bottom, a)]),
                       F.name, "join with nabla", C.nu, a)
                expect(cg.join_with_delta(C, a) == cg.congruence_from_pairs(F, base + [(a, top)]),
                       F.name, "join with delta", C.nu, a)
                checks += 2
    return checks


def nucleus_laws():
    checks = 0

    def ok(F, C):
        nonlocal checks
        checks += 1
        expect(cg.nucleus_violation(F, C.nu) is None, F.name, C.nu)

    for F in lattices():
        A = assembly_of(F)
        congs = A.congruences
        for C in congs:
            ok(F, C)
            ok(F, cg.closure(C))
            ok(F, cg.join_with_largest_dense(C))
        for a in range(F.size):
            for C in (cg.nabla(F, a), cg.delta(F, a), cg.clear_congruence(F, a)):
                ok(F, C)
            for b in range(F.size):
                ok(F, cg.principal_congruence(F, a, b))
        ok(F, cg.largest_dense(F))
        # binary meets and joins: every pair when the congruence frame is small,
        # otherwise every congruence against every closed and open congruence
        partners = congs if len(congs) <= 64 else [cg.nabla(F, a) for a in range(F.size)] + \
            [cg.delta(F, a) for a in range(F.size)]
        for C in congs:
            for D in partners:
                ok(F, cg.meet(C, D))
                ok(F, cg.join(C, D))
    return checks


def complementation_and_homomorphy():
    checks = 0
    for F in lattices():
        A = assembly_of(F)
        G = A.frame
        nab = A.nabla_map
        expect(len(set(nab)) == F.size, F.name, "nabla not injective")
        for a in range(F.size):
            n, d = cg.nabla(F, a), cg.delta(F, a)
            expect(cg.meet(n, d) == cg.diagonal(F), F.name, "meet", a)
            expect(cg.join(n, d) == cg.all_pairs(F), F.name, "join", a)
            for b in range(F.size):
                expect(nab[F.meet(a, b)] == G.meet(nab[a], nab[b]), F.name, "preserves meet", a, b)
                expect(nab[F.join(a, b)] == G.join(nab[a], nab[b]), F.name, "preserves join", a, b)
                checks += 2
        expect(nab[F.bottom] == G.bottom and nab[F.top] == G.top, F.name, "bounds")
    return checks


def assembly_counts():
    checks = 0
    for n in range(1, 7):
        expect(assembly_of(chain(n)).frame.size == 2 ** (n - 1), "chain", n)
        checks += 1
    for k in range(4):
        A = assembly_of(boolean(k))
        expect(A.frame.size == 2 ** k, "boolean", k)
        expect(sorted(A.nabla_map) == list(range(A.frame.size)), "nabla onto", k)
        checks += 2
    bases = [chain(n) for n in range(1, 6)] + [boolean(k) for k in range(3)] + lattices(5)
    for F in bases:
        raw = {oracles.partition_nu(F, p) for p in oracles.all_congruence_partitions(F)}
        expect({C.nu for C in asm.assemble(F).congruences} == raw, F.name, "raw enumeration")
        checks += 1
    return checks


def universal_property():
    checks = 0
    small = lattices(4)
    for L in small:
        A = assembly_of(L)
        for M in small:
            out_homs = list(iter_homs(A.frame, M))
            for f in iter_homs(L, M):
                if not all((M.complemented >> y) & 1 for y in f.map):
                    continue
                through = [g for g in out_homs if all(g.map[A.nabla_map[x]] == f.map[x] for x in range(L.size))]
                expect(len(through) == 1, L.name, M.name, f.map, len(through))
                g = asm.extend_along_nabla(A, f)
                expect(g is not None and g.map == through[0].map, L.name, M.name, f.map)
                checks += 1
    expect(checks > 0, "no homs with complemented image")
    return checks


def quotient_isomorphism():
    checks = 0
    for L in lattices(6):
        A = assembly_of(L)
        for C in A.congruences:
            iso = asm.quotient_iso(L, C, assembly=A)
            expect(len(set(iso.hom.map)) == iso.hom.target.size, L.name, C.nu)
            checks += 1
    return checks


def dense_and_clear():
    checks = 0
    for F in lattices():
        pc = F.pseudocomplements
        D = cg.largest_dense(F)
        expect(D.nu == oracles.dense_formula(F), F.name, "dense formula")
        expect(D == cg.from_kernel(F, lambda x: pc[pc[x]]), F.name, "dense kernel")
        clears = [cg.clear_congruence(F, a) for a in range(F.size)]
        for a, K in enumerate(clears):
            expect(K.nu == oracles.clear_formula(F, a), F.name, "clear formula", a)
            expect(K == cg.from_kernel(F, lambda x: F.arrow(x, a)), F.name, "clear kernel", a)
            checks += 2
        for C in assembly_of(F).congruences:
            above = [K for K in clears if C.le(K)]
            expect(cg.meet_all(F, above) == C, F.name, "clear decomposition", C.nu)
            a = C.nu[F.bottom]
            expect(cg.closure(C) == cg.nabla(F, a), F.name, "closure", C.nu)
            expect(cg.join(D, C) == cg.clear_congruence(F, pc[pc[a]]), F.name, "dense join", C.nu)
            Q, _ = cg.quotient(F, C)
            expect(is_boolean(Q) == cg.is_clear(C), F.name, "boolean iff clear", C.nu)
            checks += 4
    return checks


def beazer_macnab():
    checks = 0
    for F in lattices():
        for a in range(F.size):
            b = cg.beazer_macnab_witness(F, a)
            expect(cg.clear_congruence(F, a) == cg.join(cg.nabla(F, a), cg.delta(F, b)), F.name, a, b)
            # least: no smaller element above a collapses with the top
            for c in bits(F.up[a]):
                if F.arrow(c, a) == F.arrow(F.top, a):
                    expect(F.le(b, c), F.name, "not least", a, b, c)
            checks += 1
    return checks


def rarity():
    checks = 0
    for F in lattices():
        A = assembly_of(F)
        G = A.frame
        for i, C in enumerate(A.congruences):
            dense_in_assembly = G.pc(i) == G.bottom
            expect(cg.is_rare(C) == dense_in_assembly, F.name, C.nu)
            expect(dense_in_assembly == (C == cg.all_pairs(F)), F.name, "only the top is rare", C.nu)
            checks += 2
    return checks


def biframe_suite():
    checks = 0
    for F in lattices():
        B = asm.congruence_biframe(assembly_of(F))
        bf.validate_biframe(B)
        expect(bf.is_strictly_zero_dimensional(B), F.name, "str0d")
        found = bf.str0d_biframes_over(F)
        expect(len(found) == 1 and bf.biframes_isomorphic(found[0], B), F.name, "unique biframe")
        expect(bf.congruential_routes(B) == (True, True), F.name, "routes")
        checks += 3
    for X in corpus_spaces(5):
        if sp.is_T0(X):
            injective, complete = bf.congruential_routes(sp.skula_biframe(X))
            expect(injective == complete, X.name, "routes disagree", injective, complete)
            checks += 1
    small = lattices(4)
    for L in small:
        for M in small:
            n_frame, n_bi, bijective = bf.adjunction_correspondence(L, asm.congruence_biframe(assembly_of(M)))
            expect(bijective and n_frame == n_bi, L.name, M.name, n_frame, n_bi)
            checks += 1
    return checks


def spatial_suite():
    checks = 0
    for F in lattices():
        unit = sp.spectrum_unit(F)
        expect(len(set(unit.map)) == F.size == unit.target.size, F.name, "sigma")
        A = assembly_of(F)
        expect(sp.prime_congruences(A) == sp.clear_primes(A), F.name, "primes")
        for C in A.congruences:
            expect(sp.spatial_reflection_of_quotient(A, C) == C, F.name, "spatial reflection", C.nu)
        expect(sp.skula_iso_check(F, assembly=A), F.name, "skula iso")
        checks += 3 + len(A.congruences)
    small = lattices(4)
    for L in small:
        for M in small:
            for f in iter_homs(L, M):
                expect(sp.skula_naturality_check(f, assembly_of(L), assembly_of(M)), L.name, M.name, f.map)
                checks += 1
    for X in corpus_spaces(6):
        expect(sp.is_TD(X) == sp.td_separation(X), X.name, "T_D")
        checks += 1
    return checks


def end_to_end():
    outputs = []
    for workers in ("1", "1", "2"):
        started = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "framecalc.cli", "check", "--suite", "all", "--max-size", "6",
                               "--workers", workers], capture_output=True)
        elapsed = time.perf_counter() - started
        expect(proc.returncode == 0, "exit code", proc.returncode, proc.stdout[-400:])
        expect(elapsed < 60, "run took", round(elapsed, 1), "workers", workers)
        outputs.append(proc.stdout)
    expect(outputs[0] == outputs[1], "output differs between identical runs")
    expect(outputs[0] == outputs[2], "output depends on worker count")
    return outputs[0].count(b"\nPASS ")


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[], int]
    target: float | None = None


CRITERIA = [
    Criterion(1, "closed formulas equal generated congruences", formula_oracle_equivalence, 5),
    Criterion(2, "nucleus laws for every produced congruence", nucleus_laws),
    Criterion(3, "complements and homomorphy of nabla", complementation_and_homomorphy),
    Criterion(4, "congruence frame sizes", assembly_counts, 10),
    Criterion(5, "universal property of the closed embedding", universal_property),
    Criterion(6, "congruence frame of a quotient", quotient_isomorphism, 15),
    Criterion(7, "dense and clear congruences", dense_and_clear),
    Criterion(8, "least witness for clear congruences", beazer_macnab),
    Criterion(9, "rare congruences", rarity),
    Criterion(10, "strictly zero-dimensional biframes", biframe_suite),
    Criterion(11, "spectra, Skula and T_D separation", spatial_suite, 20),
    # three runs, each held to 60 seconds inside the criterion
    Criterion(12, "end-to-end check run, each run under 60s", end_to_end),
]


def evaluate(c: Criterion) -> tuple[bool, str]:
    started = time.perf_counter()
    try:
        checks = c.run()
        failure = None
    except Exception as e:  # report every failure as a FAIL line
        checks, failure = 0, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - started
    if failure is None and c.target is not None and elapsed >= c.target:
        failure = f"took {elapsed:.2f}s, target {c.target}s"
    target = f" target<{c.target:g}s" if c.target is not None else ""
    status = "PASS" if failure is None else "FAIL"
    line = f"{status} criterion {c.number:2d}: {c.title} checks={checks} time={elapsed:.2f}s{target}"
    if failure is not None:
        line += f" ({failure})"
    return failure is None, line


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    ok, line = evaluate(criterion)
    with capsys.disabled():
        print("\n" + line, flush=True)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
