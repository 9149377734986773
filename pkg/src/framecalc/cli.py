"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 budget
exceeded, 5 property failure. Results go to stdout; timings and error
messages go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import assembly as asm
from . import biframe as bf
from . import checks
from . import congruence as cg
from . import formats
from . import spatial as sp
from .catalog import corpus_hash, corpus_lattices, corpus_spaces, lattice_canonical_form, named
from .errors import FrameCalcError, IndexOutOfRange, ParseError, ValidationError
from .order import Frame, bits, dense_elements, frame_from_poset, mask_of

NAMED_PREFIX = "named:"


# ---------------------------------------------------------------------------
# Loading inputs
# ---------------------------------------------------------------------------


def load(path: str):
    """Parse a file (or ``named:<catalog name>``) into a validated value.

    Returns a frame, a biframe, a ``(frame, congruence)`` pair or a space.
    """
    if path.startswith(NAMED_PREFIX):
        entry = named(path[len(NAMED_PREFIX):])
        if entry.kind == "poset":
            return frame_from_poset(entry.payload, name=entry.name)
        return entry.payload
    doc = formats.read_file(path)
    if isinstance(doc, formats.SpaceDoc):
        return formats.space_from_doc(doc)
    if isinstance(doc, formats.HomDoc):
        raise ValidationError("a hom file needs --source and --target lattices", witness=("hom",))
    F = formats.frame_from_doc(doc)
    if doc.part1 is not None:
        return bf.validate_biframe(bf.Biframe(F, mask_of(doc.part1), mask_of(doc.part2)))
    if doc.nucleus is not None:
        return F, cg.congruence_from_nucleus(F, doc.nucleus)
    return F


def load_frame(path: str) -> Frame:
    value = load(path)
    if isinstance(value, Frame):
        return value
    if isinstance(value, bf.Biframe):
        return value.total
    if isinstance(value, tuple):
        return value[0]
    raise ValidationError(f"{path} is a space, expected a lattice", witness=("kind", "space"))


def load_space(path: str) -> sp.FiniteSpace:
    value = load(path)
    if not isinstance(value, sp.FiniteSpace):
        raise ValidationError(f"{path} is a lattice, expected a space", witness=("kind", "lattice"))
    return value


def parse_pairs(text: str, F: Frame) -> list[tuple[int, int]]:
    pairs = []
    for k, item in enumerate(p for p in text.split(";") if p.strip()):
        parts = [s.strip() for s in item.split(",")]
        if len(parts) != 2 or not all(s.isdigit() for s in parts):
            raise ParseError(f"--pairs entry {k + 1} must look like a,b", 1, k + 1)
        a, b = int(parts[0]), int(parts[1])
        for v in (a, b):
            if v >= F.size:
                raise IndexOutOfRange(f"element {v} out of range 0..{F.size - 1}", witness=("pairs", v))
        pairs.append((a, b))
    return pairs


def element(text: str, F: Frame) -> int:
    """An element given by index or by label."""
    if text.isdigit():
        v = int(text)
        if v >= F.size:
            raise IndexOutOfRange(f"element {v} out of range 0..{F.size - 1}", witness=("element", v))
        return v
    if text in F.labels:
        return F.labels.index(text)
    raise ParseError(f"no element {text!r}", 1, 1)


def _set(mask: int) -> str:
    return "{" + ",".join(map(str, bits(mask))) + "}"


def _write(target: str, text: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    value = load(args.path)
    if isinstance(value, sp.FiniteSpace):
        print(f"ok space {value.name or '-'} points={value.points} opens={len(value.opens)}")
    elif isinstance(value, bf.Biframe):
        print(f"ok biframe {value.total.name or '-'} size={value.total.size} "
              f"part1={bin(value.part1).count('1')} part2={bin(value.part2).count('1')}")
    elif isinstance(value, tuple):
        F, C = value
        print(f"ok congruence {F.name or '-'} size={F.size} classes={len(C.blocks())}")
    else:
        print(f"ok lattice {value.name or '-'} size={value.size}")
    return 0


def cmd_info(args) -> int:
    value = load(args.path)
    if isinstance(value, sp.FiniteSpace):
        X = value
        print(f"name: {X.name or '-'}")
        print(f"points: {X.points}")
        print(f"opens: {len(X.opens)}")
        print(f"T0: {str(sp.is_T0(X)).lower()}")
        print(f"TD: {str(sp.is_TD(X)).lower()}")
        print(f"sober: {str(sp.is_sober(X)).lower()}")
        return 0
    F = load_frame(args.path)
    print(f"name: {F.name or '-'}")
    print(f"size: {F.size}")
    print(f"join-irreducibles: {_set(F.join_irreducibles)}")
    print(f"|J|: {bin(F.join_irreducibles).count('1')}")
    print(f"primes: {_set(F.primes)}")
    print(f"complemented: {_set(F.complemented)}")
    print(f"dense: {_set(dense_elements(F))}")
    print(f"predicted |C L|: {asm.predicted_size(F)}")
    return 0


def assembly_json(A: asm.Assembly, tower: asm.Tower | None, levels: int | None) -> dict:
    G = A.frame
    out = {
        "base": formats.frame_json(A.base),
        "size": G.size,
        "boolean": G.complemented == (1 << G.size) - 1,
        "congruences": [
            {"index": i, "label": G.labels[i], "nucleus": list(C.nu),
             "blocks": [list(bits(b)) for b in C.blocks()]}
            for i, C in enumerate(A.congruences)
        ],
        "covers": [list(c) for c in sorted(G.poset.covers)],
        "nabla": list(A.nabla_map),
        "delta": list(A.delta_map),
    }
    if tower is not None:
        out["tower"] = {"sizes": padded_sizes(tower, levels), "stable_at": tower.stable_at}
    return out


def padded_sizes(tower: asm.Tower, levels: int) -> list[int]:
    # Once the tower is stable every later level has the same size.
    sizes = list(tower.sizes)
    while len(sizes) < levels:
        sizes.append(sizes[-1])
    return sizes[:levels]


def cmd_assembly(args) -> int:
    F = load_frame(args.path)
    budget = args.budget
    A = asm.assemble(F, budget)
    T = asm.tower(F, args.tower, budget) if args.tower else None
    G = A.frame
    if args.json:
        _write(args.json, formats.dumps(assembly_json(A, T, args.tower)))
    if args.dot:
        _write(args.dot, formats.dot(G, title=G.name))
    if args.json == "-" or args.dot == "-":
        return 0
    print(f"base: {F.name or '-'} size={F.size}")
    print(f"congruences: {G.size}")
    print(f"boolean: {str(G.complemented == (1 << G.size) - 1).lower()}")
    for i, C in enumerate(A.congruences):
        blocks = " ".join(_set(b) for b in C.blocks())
        print(f"{i} {G.labels[i]} nucleus={' '.join(map(str, C.nu))} blocks={blocks}")
    if T is not None:
        print(f"tower sizes: {' '.join(map(str, padded_sizes(T, args.tower)))}")
        print(f"tower stable at: {'-' if T.stable_at is None else T.stable_at}")
    return 0


def _congruence_from_args(F: Frame, args) -> cg.Congruence:
    chosen = [opt for opt in ("pairs", "nabla", "delta") if getattr(args, opt, None) is not None]
    if len(chosen) != 1:
        raise ParseError("give exactly one of --pairs, --nabla, --delta", 1, 1)
    if args.pairs is not None:
        return cg.congruence_from_pairs(F, parse_pairs(args.pairs, F))
    if args.nabla is not None:
        return cg.nabla(F, element(args.nabla, F))
    return cg.delta(F, element(args.delta, F))


def cmd_congruence(args) -> int:
    F = load_frame(args.path)
    C = _congruence_from_args(F, args)
    print("blocks: " + " ".join(_set(b) for b in C.blocks()))
    print("nucleus: " + " ".join(map(str, C.nu)))
    return 0


def cmd_quotient(args) -> int:
    F = load_frame(args.path)
    C = _congruence_from_args(F, args)
    Q, _ = cg.quotient(F, C, name=f"{F.name}_q" if F.name else "quotient")
    sys.stdout.write(formats.lattice_text(Q))
    return 0


def cmd_spectrum(args) -> int:
    F = load_frame(args.path)
    S = sp.sigma(F)
    sys.stdout.write(formats.space_text(S.space, f"Sigma_{F.name}" if F.name else "spectrum"))
    return 0


def cmd_sobrify(args) -> int:
    X = load_space(args.path)
    Y, _ = sp.sobrification(X)
    sys.stdout.write(formats.space_text(Y, f"sob_{X.name}" if X.name else "sobrification"))
    return 0


def cmd_skula(args) -> int:
    X = load_space(args.path)
    B = sp.skula_biframe(X, reflect=args.reflect)
    sys.stdout.write(formats.biframe_text(B, f"Sk_{X.name}" if X.name else "skula"))
    return 0


def cmd_check(args) -> int:
    started = time.perf_counter()
    reports = []
    if args.fixture:
        F, C_nu = _load_fixture(args.fixture)
        reports.append(checks.fixture_report(C_nu, F, os.path.basename(args.fixture)))
    else:
        reports = checks.run_suite(args.suite, args.max_size, args.seed, args.workers)
    sys.stdout.write(checks.format_reports(reports, args.suite, args.max_size, args.seed))
    print(f"elapsed {time.perf_counter() - started:.2f}s workers={args.workers}", file=sys.stderr)
    failed = any(r.failure is not None and not r.info for r in reports)
    return 5 if failed else 0


def _load_fixture(path: str):
    # Unlike ``load``, a bad nucleus here is a property failure, not a
    # validation error, so the raw values are kept.
    doc = formats.read_file(path)
    if not isinstance(doc, formats.LatticeDoc) or doc.nucleus is None:
        raise ValidationError(f"{path} has no nucleus record", witness=("nucleus",))
    return formats.frame_from_doc(doc), tuple(doc.nucleus)


def cmd_export_corpus(args) -> int:
    os.makedirs(args.directory, exist_ok=True)
    manifest = [f"# corpus {corpus_hash()}"]
    for i, F in enumerate(corpus_lattices()):
        fname = f"lattice_{i:03d}.lat"
        text = formats.lattice_text(F, F.name or f"L{i}")
        _write(os.path.join(args.directory, fname), text)
        manifest.append(f"{fname} {_digest(repr(lattice_canonical_form(F)))}")
    for i, X in enumerate(corpus_spaces()):
        fname = f"space_{i:04d}.spc"
        text = formats.space_text(X, X.name or f"X{i}")
        _write(os.path.join(args.directory, fname), text)
        manifest.append(f"{fname} {_digest(text)}")
    _write(os.path.join(args.directory, "MANIFEST"), "\n".join(manifest) + "\n")
    print(f"wrote {len(manifest) - 1} files to {args.directory}")
    return 0


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framecalc", description="Finite frames, congruence frames, biframes and spectra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check that a file holds a valid lattice, biframe, congruence or space")
    p.add_argument("path")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("info", help="summary invariants of a lattice or space")
    p.add_argument("path")
    p.set_defaults(run=cmd_info)

    p = sub.add_parser("assembly", help="the frame of all congruences")
    p.add_argument("path")
    p.add_argument("--budget", type=_positive, default=None, help="largest congruence frame to build")
    p.add_argument("--tower", type=_positive, default=None, metavar="K", help="report K levels of iteration")
    p.add_argument("--dot", metavar="OUT", help="write the Hasse diagram (use - for stdout)")
    p.add_argument("--json", metavar="OUT", help="write JSON (use - for stdout)")
    p.set_defaults(run=cmd_assembly)

    for name, run, help_text in (("congruence", cmd_congruence, "the least congruence containing some pairs"),
                                 ("quotient", cmd_quotient, "the quotient lattice by a congruence")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path")
        p.add_argument("--pairs", help='pairs as "a,b;c,d"')
        p.add_argument("--nabla", metavar="A", help="the closed congruence of an element")
        p.add_argument("--delta", metavar="A", help="the open congruence of an element")
        p.set_defaults(run=run)

    p = sub.add_parser("spectrum", help="the space of primes")
    p.add_argument("path")
    p.set_defaults(run=cmd_spectrum)

    p = sub.add_parser("sobrify", help="the sobrification of a space")
    p.add_argument("path")
    p.set_defaults(run=cmd_sobrify)

    p = sub.add_parser("skula", help="the Skula biframe of a T0 space")
    p.add_argument("path")
    p.add_argument("--reflect", action="store_true", help="take the T0 reflection first")
    p.set_defaults(run=cmd_skula)

    p = sub.add_parser("check", help="run the property suites")
    p.add_argument("--suite", default="all", choices=list(checks.SUITES) + ["all"])
    p.add_argument("--max-size", type=_positive, default=6, help="largest lattice (elements) or space (points)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--fixture", metavar="CNG", help="check the nucleus laws on a congruence file")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("export-corpus", help="write the pinned corpus as files plus a manifest")
    p.add_argument("directory")
    p.set_defaults(run=cmd_export_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.run(args)
    except FrameCalcError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        witness = getattr(e, "witness", None)
        if witness is not None:
            print(f"witness: {witness!r}", file=sys.stderr)
        partial = getattr(e, "partial", None)
        if partial is not None:
            print(f"partial: {partial!r}", file=sys.stderr)
        return e.exit_code
    except BrokenPipeError:
        return 0
    if args.command != "check":
        print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
