"""Command-line interface: ``tilepump <command> <tile file> [options]``.

Exit status 0 on success, 1 on a typed analysis failure, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FilePath

from tilepump.decomposition import (
    DECOMPOSITION_MARGIN,
    PERIODIC_MARGIN,
    Kind,
    classify,
    complexity,
    decompose,
    default_window,
    to_semilinear,
    verify,
)
from tilepump.errors import InputError, TilepumpError, VerificationFailed
from tilepump.io import (
    DecompositionDocument,
    parse_decomposition,
    parse_tileset,
    serialize_decomposition,
    text_digest,
)
from tilepump.model import Window, check_directed, grow_trace
from tilepump.pumping import DEFAULT_BOUND
from tilepump.render import render_ascii, render_svg


def _read(path: str) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _window(t, args) -> Window:
    if args.center is not None:
        return Window(tuple(args.center), args.radius)
    return default_window(t, args.radius)


def _vec(v) -> str:
    return f"({v[0]},{v[1]})"


def cmd_simulate(args, out) -> None:
    t = parse_tileset(_read(args.file))
    w = _window(t, args)
    trace = grow_trace(t, w)
    if args.svg:
        FilePath(args.svg).write_text(render_svg(trace.assembly, w), encoding="utf-8")
    out.write(f"tiles={len(trace.assembly)} window={args.radius} center={_vec(w.center)} "
              f"terminal={'yes' if trace.complete else 'no'}\n")
    if args.ascii:
        out.write(render_ascii(trace.assembly, w))


def cmd_check_directed(args, out) -> None:
    t = parse_tileset(_read(args.file))
    report = check_directed(t, _window(t, args), args.max_tiles)
    out.write(("DIRECTED" if report.directed else "NOT_DIRECTED") + f" explored={report.explored}\n")
    for c in report.conflicts:
        out.write(f"conflict at {_vec(c.position)}: {c.placed.name} versus {c.alternative.name} "
                  f"(assemblies of {len(c.assembly_a)} and {len(c.assembly_b)} tiles)\n")


def _class_line(kind: Kind, vectors) -> str:
    names = ("v",) if len(vectors) == 1 else ("u", "v")
    return f"class={kind.value}" + "".join(f" {n}={_vec(v)}" for n, v in zip(names, vectors))


def cmd_classify(args, out) -> None:
    t = parse_tileset(_read(args.file))
    margin = PERIODIC_MARGIN if args.margin is None else args.margin
    c = classify(t, _window(t, args), args.bound, margin)
    out.write(_class_line(c.kind, c.vectors) + f" window={args.radius} bound={args.bound}\n")
    for wit in c.evidence:
        out.write(f"witness {wit.verdict.value} vector={_vec(wit.vector)} "
                  f"length={len(wit.path)} start={_vec(wit.path[0].pos)}\n")


def cmd_decompose(args, out) -> None:
    text = _read(args.file)
    t = parse_tileset(text)
    w = _window(t, args)
    margin = DECOMPOSITION_MARGIN if args.margin is None else args.margin
    d = decompose(t, w, args.bound, margin)
    desc = to_semilinear(d.description)
    doc = DecompositionDocument(d.classification.kind.value, d.classification.vectors,
                                args.radius, args.bound, w.center, margin, text_digest(text),
                                desc.sets)
    rendered = serialize_decomposition(doc)
    if args.out:
        FilePath(args.out).write_text(rendered, encoding="utf-8")
    else:
        out.write(rendered)
    out.write(f"complexity={complexity(d.description)} sets={len(desc.sets)}\n")


def cmd_verify(args, out) -> None:
    text = _read(args.file)
    t = parse_tileset(text)
    doc = parse_decomposition(_read(args.decomposition))
    if doc.digest and doc.digest != text_digest(text):
        raise VerificationFailed("the decomposition was computed for a different tile file")
    from tilepump.decomposition import SemilinearDescription

    types = {ty.name: ty for ty in t.tile_types}
    unknown = sorted({s.tile_type for s in doc.sets} - set(types))
    if unknown:
        raise InputError(f"decomposition uses undeclared tile {unknown[0]!r}")
    radius = doc.radius if args.radius is None else args.radius
    w = Window(doc.center, radius)
    count = verify(t, SemilinearDescription(doc.sets, types), w, doc.margin)
    out.write(f"VERIFIED tiles={count} window={radius} margin={doc.margin}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilepump", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, radius_required=True):
        p.add_argument("file", help="tile-set file")
        p.add_argument("--radius", type=int, required=radius_required, default=None,
                       help="L-infinity radius of the window")
        p.add_argument("--center", type=int, nargs=2, metavar=("X", "Y"), default=None,
                       help="window centre (default: centre of the seed)")

    p = sub.add_parser("simulate", help="grow the window-terminal assembly")
    common(p)
    shape = p.add_mutually_exclusive_group()
    shape.add_argument("--ascii", action="store_true", help="print an ASCII picture")
    shape.add_argument("--svg", metavar="OUT", help="write an SVG picture")
    p.set_defaults(run=cmd_simulate)

    p = sub.add_parser("check-directed", help="decide directedness within the window")
    common(p)
    p.add_argument("--max-tiles", type=int, default=100_000)
    p.set_defaults(run=cmd_check_directed)

    p = sub.add_parser("classify", help="finite, simply/bi-periodic or aperiodic")
    common(p)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("decompose", help="write a verified semilinear description")
    common(p)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--margin", type=int, default=None)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition file against simulation")
    common(p, radius_required=False)
    p.add_argument("--decomposition", metavar="FILE", required=True)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.run(args, sys.stdout)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TilepumpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
