"""Named examples and exhaustive enumeration of small posets, lattices and spaces.

Distributive lattices come from posets by taking downsets, and finite
topologies come from a poset of indistinguishable-point blocks plus a
multiplicity for each block. Both are deduplicated by a canonical form
minimised over the permutations that respect a cheap invariant.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Sequence

from .errors import SizeBudgetExceeded, UnknownName
from .order import (
    Frame,
    Poset,
    bits,
    downset_frame,
    frame_from_poset,
    free_frame_on_semilattice,
    free_meet_semilattice,
    members,
    poset_from_covers,
    poset_from_up,
    product_frame,
)
from .spatial import FiniteSpace, space_from_opens, space_from_order

MAX_ENUMERATED_POSET = 6

# sha256 of corpus_serialization() for the default corpus
CORPUS_HASH = "a85ba1c173cbf6ea466390dc9bc5eae986977b51512eb870a40ddc03c7f7b397"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    kind: str
    payload: Any
    provenance: dict = field(default_factory=dict)
    expect_reject: bool = False


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def canonical_form(up: Sequence[int], colours: Sequence[int] | None = None) -> tuple:
    """Isomorphism-invariant form of a (coloured) poset given by up-set rows.

    Elements are first sorted by (colour, up-degree, down-degree); the form
    is the least relabelled up-row tuple over permutations inside each
    group of equal invariants.
    """
    n = len(up)
    colours = list(colours) if colours is not None else [0] * n
    down = [0] * n
    for i, row in enumerate(up):
        for j in bits(row):
            down[j] |= 1 << i
    inv = [(colours[i], up[i].bit_count(), down[i].bit_count()) for i in range(n)]
    groups: dict[tuple, list[int]] = {}
    for i in sorted(range(n), key=lambda i: inv[i]):
        groups.setdefault(inv[i], []).append(i)
    keys = sorted(groups)
    best = None
    for choice in product(*(permutations(groups[k]) for k in keys)):
        order = [i for part in choice for i in part]
        pos = [0] * n
        for new, old in enumerate(order):
            pos[old] = new
        code = []
        for old in order:
            row = 0
            for j in bits(up[old]):
                row |= 1 << pos[j]
            code.append(row)
        code = tuple(code)
        if best is None or code < best:
            best = code
    return (tuple(keys), tuple(len(groups[k]) for k in keys), best or ())


def poset_canonical_form(p: Poset) -> tuple:
    return canonical_form(p.up)


def lattice_canonical_form(F: Frame) -> tuple:
    """Canonical form of the poset of join-irreducibles, which determines ``F``."""
    return poset_canonical_form(F.poset.induced(members(F.join_irreducibles)))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _downsets(p: Poset) -> list[int]:
    out = [0]
    for x in p.linear_extension:
        below = p.down[x] & ~(1 << x)
        out += [d | (1 << x) for d in out if d & below == below]
    return out


@lru_cache(maxsize=None)
def _posets_of_size(n: int) -> tuple[Poset, ...]:
    if n > MAX_ENUMERATED_POSET:
        raise SizeBudgetExceeded(n, MAX_ENUMERATED_POSET)
    if n == 0:
        return (poset_from_up([]),)
    found: dict[tuple, Poset] = {}
    for p in _posets_of_size(n - 1):
        for d in _downsets(p):
            # new element n-1 sits above exactly the downset d
            up = [row | ((1 << (n - 1)) if (d >> i) & 1 else 0) for i, row in enumerate(p.up)]
            up.append(1 << (n - 1))
            q = poset_from_up(up)
            found.setdefault(poset_canonical_form(q), q)
    return tuple(_relabel_canonically(found[k]) for k in sorted(found))


def _relabel_canonically(p: Poset) -> Poset:
    # Re-index along a linear extension so covers read bottom-up.
    return p.induced(list(p.linear_extension))


def enumerate_posets(n: int) -> list[Poset]:
    """All posets with exactly ``n`` elements, up to isomorphism."""
    return list(_posets_of_size(n))


def enumerate_posets_upto(max_n: int) -> list[Poset]:
    return [p for n in range(max_n + 1) for p in _posets_of_size(n)]


def enumerate_distributive_lattices(max_elements: int = 64, max_poset_size: int = 4) -> list[Frame]:
    """Downset frames of posets with at most ``max_poset_size`` elements, up to isomorphism."""
    out: dict[tuple, Frame] = {}
    for n in range(max_poset_size + 1):
        for i, p in enumerate(_posets_of_size(n)):
            if len(_downsets(p)) > max_elements:
                continue
            F = downset_frame(p, name=f"D{n}.{i}")
            out.setdefault(lattice_canonical_form(F), F)
    return sorted(out.values(), key=lambda F: (F.size, lattice_canonical_form(F)))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _spaces_of_size(n: int) -> tuple[FiniteSpace, ...]:
    found: dict[tuple, FiniteSpace] = {}
    for k in range(n + 1):
        for j, p in enumerate(_posets_of_size(k)):
            for mult in _compositions(n, k):
                key = canonical_form(p.up, mult)
                if key not in found:
                    found[key] = space_from_order(p.up, mult, name=f"X{n}.{k}.{j}." + "".join(map(str, mult)))
    return tuple(found[k] for k in sorted(found))


def enumerate_spaces(n: int) -> list[FiniteSpace]:
    """All topologies on ``n`` points, up to homeomorphism."""
    return list(_spaces_of_size(n))


def enumerate_spaces_upto(max_points: int) -> list[FiniteSpace]:
    return [X for n in range(max_points + 1) for X in _spaces_of_size(n)]


# ---------------------------------------------------------------------------
# Named entries
# ---------------------------------------------------------------------------


def chain(n: int) -> Frame:
    if not 1 <= n <= 26:
        raise UnknownName(f"chain({n}) out of range")
    if n == 1:
        labels = ["0"]
    else:
        labels = ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]
    return frame_from_poset(poset_from_covers(n, [(i, i + 1) for i in range(n - 1)]),
                            labels=labels, name=f"chain({n})")


ATOM_NAMES = "pqrstuvw"


def boolean(k: int) -> Frame:
    p = poset_from_up([1 << i for i in range(k)])
    F = downset_frame(p, labels=ATOM_NAMES[:k])
    full = (1 << k) - 1
    labels = ["0" if s == 0 else "1" if s == full else "".join(ATOM_NAMES[i] for i in bits(s)) for s in F.carrier]
    return Frame(F.poset, F.meet_table, F.join_table, F.bottom, F.top, labels, F.carrier, f"boolean({k})")


def sierpinski_frame() -> Frame:
    return frame_from_poset(poset_from_covers(3, [(0, 1), (1, 2)]), labels=["0", "a", "1"], name="sierpinski_frame")


def sierpinski_space() -> FiniteSpace:
    # point 0 is open, point 1 is closed
    return space_from_opens(2, [0, 1, 3], name="sierpinski_space")


def discrete_space(n: int) -> FiniteSpace:
    return space_from_opens(n, range(1 << n), name=f"discrete_space({n})")


def indiscrete_space(n: int) -> FiniteSpace:
    return space_from_opens(n, [0, (1 << n) - 1], name=f"indiscrete_space({n})")


def diamond_m3() -> Poset:
    return poset_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def pentagon_n5() -> Poset:
    return poset_from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def grid(m: int, n: int) -> Frame:
    """Product of the chains with ``m`` and ``n`` elements."""
    F = product_frame(chain(m), chain(n), name=f"grid({m},{n})")
    return F


def free_frame(g: int) -> Frame:
    F = free_frame_on_semilattice(free_meet_semilattice(g))
    return Frame(F.poset, F.meet_table, F.join_table, F.bottom, F.top, F.labels, F.carrier, f"free_frame({g})")


_PATTERNS = [
    (r"chain\((\d+)\)", lambda n: CatalogEntry(f"chain({n})", "lattice", chain(n), {"chain": n}), (1, 8)),
    (r"boolean\((\d+)\)", lambda k: CatalogEntry(f"boolean({k})", "lattice", boolean(k), {"boolean": k}), (0, 4)),
    (r"free_frame\((\d+)\)", lambda g: CatalogEntry(f"free_frame({g})", "lattice", free_frame(g), {"free": g}), (0, 2)),
    (r"discrete_space\((\d+)\)",
     lambda n: CatalogEntry(f"discrete_space({n})", "space", discrete_space(n), {"discrete": n}), (0, 6)),
    (r"indiscrete_space\((\d+)\)",
     lambda n: CatalogEntry(f"indiscrete_space({n})", "space", indiscrete_space(n), {"indiscrete": n}), (0, 6)),
]

_FIXED = {
    "sierpinski_frame": lambda: CatalogEntry("sierpinski_frame", "lattice", sierpinski_frame()),
    "sierpinski_space": lambda: CatalogEntry("sierpinski_space", "space", sierpinski_space()),
    "diamond_M3": lambda: CatalogEntry("diamond_M3", "poset", diamond_m3(), expect_reject=True),
    "pentagon_N5": lambda: CatalogEntry("pentagon_N5", "poset", pentagon_n5(), expect_reject=True),
}


def named(name: str) -> CatalogEntry:
    name = name.strip().replace(" ", "")
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"grid\((\d+),(\d+)\)", name)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if 1 <= a <= 4 and 1 <= b <= 4:
            return CatalogEntry(f"grid({a},{b})", "lattice", grid(a, b), {"grid": (a, b)})
    for pattern, build, (lo, hi) in _PATTERNS:
        m = re.fullmatch(pattern, name)
        if m and lo <= int(m.group(1)) <= hi:
            return build(int(m.group(1)))
    raise UnknownName(f"unknown catalog name {name!r}", witness=name)


NAMED_LATTICES = tuple([f"chain({n})" for n in range(1, 9)] + [f"boolean({k})" for k in range(5)]
                       + ["sierpinski_frame", "grid(2,2)", "free_frame(0)", "free_frame(1)", "free_frame(2)"])


# ---------------------------------------------------------------------------
# The pinned corpus
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def corpus_lattices(max_poset_size: int = 4) -> tuple[Frame, ...]:
    """Named lattices first, then every other downset frame of a small poset."""
    out: dict[tuple, Frame] = {}
    for name in NAMED_LATTICES:
        F = named(name).payload
        out.setdefault(lattice_canonical_form(F), F)
    for F in enumerate_distributive_lattices(max_poset_size=max_poset_size):
        out.setdefault(lattice_canonical_form(F), F)
    return tuple(sorted(out.values(), key=lambda F: (F.size, lattice_canonical_form(F))))


@lru_cache(maxsize=None)
def corpus_spaces(max_points: int = 6) -> tuple[FiniteSpace, ...]:
    return tuple(enumerate_spaces_upto(max_points))


def corpus_serialization(max_poset_size: int = 4, max_points: int = 6) -> str:
    lines = []
    for F in corpus_lattices(max_poset_size):
        lines.append(f"lat {F.name} {F.size} " + " ".join(f"{a}<{b}" for a, b in F.poset.covers))
    for X in corpus_spaces(max_points):
        lines.append(f"spc {X.name} {X.points} " + " ".join(map(str, X.opens)))
    return "\n".join(lines) + "\n"


def corpus_hash(max_poset_size: int = 4, max_points: int = 6) -> str:
    return hashlib.sha256(corpus_serialization(max_poset_size, max_points).encode()).hexdigest()
