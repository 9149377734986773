"""Line-oriented text formats, JSON and DOT export.

Every file starts with a header record naming its kind:

    lat <name> <n>          then  cover <a> <b>
    hom <src> <dst>         then  map <i> <j>
    spc <name> <points>     then  open <i> <i> ...
    (.bif) a lat body       then  part1 <i> ...   part2 <i> ...
    (.cng) a lat body       then  nucleus <v0> <v1> ...

``#`` starts a comment. Integers are decimal. Exported files always list
records in a fixed order, so exporting a parsed file reproduces it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .order import Frame, FrameHom, bits, frame_from_poset, hom_validate, mask_of, poset_from_covers
from .spatial import FiniteSpace, space_from_opens


@dataclass
class LatticeDoc:
    name: str
    size: int
    covers: list[tuple[int, int]] = field(default_factory=list)
    part1: list[int] | None = None
    part2: list[int] | None = None
    nucleus: list[int] | None = None

    kind = "lat"


@dataclass
class HomDoc:
    source: str
    target: str
    pairs: dict[int, int] = field(default_factory=dict)

    kind = "hom"


@dataclass
class SpaceDoc:
    name: str
    points: int
    opens: list[list[int]] = field(default_factory=list)

    kind = "spc"


def _tokens(text: str):
    """Yield (line number, [(column, token), ...]) for each non-empty line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, s = tok
    if not s.isdigit():
        raise ParseError(f"expected a non-negative integer, got {s!r}", lineno, col)
    return int(s)


def _index(tok: tuple[int, str], lineno: int, bound: int, what: str = "element") -> int:
    v = _int(tok, lineno)
    if v >= bound:
        raise ParseError(f"{what} {v} out of range 0..{bound - 1}", lineno, tok[0])
    return v


def parse_text(text: str) -> LatticeDoc | HomDoc | SpaceDoc:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    lineno, head = lines[0]
    kind = head[0][1]
    if kind == "lat":
        if len(head) != 3:
            raise ParseError("header must be: lat <name> <n>", lineno, head[0][0])
        doc = LatticeDoc(head[1][1], _int(head[2], lineno))
        for lineno, toks in lines[1:]:
            rec = toks[0][1]
            if rec == "cover":
                if len(toks) != 3:
                    raise ParseError("expected: cover <a> <b>", lineno, toks[0][0])
                doc.covers.append((_index(toks[1], lineno, doc.size), _index(toks[2], lineno, doc.size)))
            elif rec in ("part1", "part2"):
                if getattr(doc, rec) is not None:
                    raise ParseError(f"duplicate {rec} record", lineno, toks[0][0])
                setattr(doc, rec, [_index(t, lineno, doc.size) for t in toks[1:]])
            elif rec == "nucleus":
                if doc.nucleus is not None:
                    raise ParseError("duplicate nucleus record", lineno, toks[0][0])
                if len(toks) - 1 != doc.size:
                    raise ParseError(f"nucleus needs {doc.size} values", lineno, toks[0][0])
                doc.nucleus = [_index(t, lineno, doc.size) for t in toks[1:]]
            else:
                raise ParseError(f"unknown record {rec!r}", lineno, toks[0][0])
        if (doc.part1 is None) != (doc.part2 is None):
            raise ParseError("a biframe needs both part1 and part2", lineno, 1)
        return doc
    if kind == "hom":
        if len(head) != 3:
            raise ParseError("header must be: hom <src> <dst>", lineno, head[0][0])
        hdoc = HomDoc(head[1][1], head[2][1])
        for lineno, toks in lines[1:]:
            if toks[0][1] != "map" or len(toks) != 3:
                raise ParseError("expected: map <i> <j>", lineno, toks[0][0])
            i, j = _int(toks[1], lineno), _int(toks[2], lineno)
            if i in hdoc.pairs:
                raise ParseError(f"element {i} mapped twice", lineno, toks[1][0])
            hdoc.pairs[i] = j
        return hdoc
    if kind == "spc":
        if len(head) != 3:
            raise ParseError("header must be: spc <name> <points>", lineno, head[0][0])
        sdoc = SpaceDoc(head[1][1], _int(head[2], lineno))
        for lineno, toks in lines[1:]:
            if toks[0][1] != "open":
                raise ParseError(f"unknown record {toks[0][1]!r}", lineno, toks[0][0])
            sdoc.opens.append([_index(t, lineno, sdoc.points, "point") for t in toks[1:]])
        return sdoc
    raise ParseError(f"unknown file kind {kind!r}", lineno, head[0][0])


def read_file(path: str) -> LatticeDoc | HomDoc | SpaceDoc:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_text(text)


# ---------------------------------------------------------------------------
# Building values
# ---------------------------------------------------------------------------


def frame_from_doc(doc: LatticeDoc) -> Frame:
    return frame_from_poset(poset_from_covers(doc.size, doc.covers), name=doc.name)


def space_from_doc(doc: SpaceDoc) -> FiniteSpace:
    return space_from_opens(doc.points, [mask_of(o) for o in doc.opens], name=doc.name)


def hom_from_doc(doc: HomDoc, source: Frame, target: Frame) -> FrameHom:
    missing = [i for i in range(source.size) if i not in doc.pairs]
    if missing:
        raise ValidationError(f"no map record for element {missing[0]}", witness=("missing", missing[0]))
    extra = [i for i in doc.pairs if i >= source.size]
    if extra:
        raise ValidationError(f"map record for unknown element {extra[0]}", witness=("range", extra[0]))
    bad = [j for j in doc.pairs.values() if j >= target.size]
    if bad:
        raise ValidationError(f"image {bad[0]} outside the target", witness=("range", bad[0]))
    return hom_validate(FrameHom(source, target, tuple(doc.pairs[i] for i in range(source.size))))


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def _name(name: str) -> str:
    return "".join(name.split()) or "unnamed"


def lattice_text(F: Frame, name: str | None = None) -> str:
    lines = [f"lat {_name(F.name if name is None else name)} {F.size}"]
    lines += [f"cover {a} {b}" for a, b in sorted(F.poset.covers)]
    return "\n".join(lines) + "\n"


def biframe_text(B, name: str | None = None) -> str:
    return (lattice_text(B.total, name)
            + "part1" + "".join(f" {i}" for i in bits(B.part1)) + "\n"
            + "part2" + "".join(f" {i}" for i in bits(B.part2)) + "\n")


def congruence_text(C, name: str | None = None) -> str:
    return lattice_text(C.frame, name) + "nucleus " + " ".join(map(str, C.nu)) + "\n"


def hom_text(f: FrameHom, source_name: str | None = None, target_name: str | None = None) -> str:
    lines = [f"hom {_name(source_name or f.source.name)} {_name(target_name or f.target.name)}"]
    lines += [f"map {i} {j}" for i, j in enumerate(f.map)]
    return "\n".join(lines) + "\n"


def space_text(X: FiniteSpace, name: str | None = None) -> str:
    lines = [f"spc {_name(X.name if name is None else name)} {X.points}"]
    lines += ["open" + "".join(f" {i}" for i in bits(u)) for u in X.opens]
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def frame_json(F: Frame) -> dict:
    return {
        "name": F.name,
        "size": F.size,
        "covers": [list(c) for c in sorted(F.poset.covers)],
        "labels": list(F.labels),
        "bottom": F.bottom,
        "top": F.top,
    }


def space_json(X: FiniteSpace) -> dict:
    return {"name": X.name, "points": X.points, "opens": [list(bits(u)) for u in X.opens]}


def biframe_json(B) -> dict:
    return {"total": frame_json(B.total), "part1": list(bits(B.part1)), "part2": list(bits(B.part2))}


def heights(F: Frame) -> list[int]:
    h = [0] * F.size
    for x in F.poset.linear_extension:
        for a, b in F.poset.covers:
            if b == x:
                h[x] = max(h[x], h[a] + 1)
    return h


def dot(F: Frame, labels: list[str] | None = None, title: str | None = None) -> str:
    """Hasse diagram, bottom to top, one rank per height."""
    labels = labels or list(F.labels)
    h = heights(F)
    lines = [f"digraph {json.dumps(title or F.name or 'frame')} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in range(F.size):
        lines.append(f"  n{x} [label={json.dumps(labels[x])}];")
    for level in range(max(h) + 1):
        lines.append("  { rank=same; " + " ".join(f"n{x};" for x in range(F.size) if h[x] == level) + " }")
    for a, b in sorted(F.poset.covers):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
