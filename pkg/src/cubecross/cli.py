"""``cubecross`` command line.

Exit status: 0 ok, 1 negative answer (not isomorphic, a check failed, no
exact value within budget), 2 usage or input error.  The default search
budget for ``cr`` comes from ``CUBECROSS_BUDGET`` (e.g. ``90s``, ``5m``).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cubes import CubeSpec, generate, parse_spec
from .geometry import crossing_count, export_svg
from .graph import Graph, GraphError
from .io import (
    DRAWING_FORMAT,
    RESULT_FORMAT,
    FormatError,
    drawing_from_json,
    format_graph,
    load_json,
    read_graph,
    result_record,
    verify_drawing,
    verify_record,
    write_drawing,
    write_json,
)
from .iso import is_isomorphic
from .lemmas import CHECKS, ORDER3, ORDER4
from .solver import BUDGET_ENV, Budget, CrResult, crossing_number, euler_girth_bound, parse_duration

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _graph_arg(text: str) -> Graph:
    """A graph file path, or a family name such as ``CQ4`` or ``1-MQ3``."""
    if Path(text).exists():
        return read_graph(text)
    try:
        return generate(parse_spec(text))
    except (GraphError, ValueError):
        raise UsageError(f"{text!r} is neither a readable graph file nor a family name") from None


def _cmd_gen(a) -> int:
    g = generate(CubeSpec(a.family.upper(), a.order, a.variant))
    text = format_graph(g)
    if a.out:
        Path(a.out).write_text(text, encoding="utf-8")
        print(f"wrote {g.name}: {g.n} vertices, {g.m} edges -> {a.out}")
    else:
        sys.stdout.write(text)
    return OK


def _cmd_iso(a) -> int:
    g, h = _graph_arg(a.first), _graph_arg(a.second)
    mp = is_isomorphic(g, h)
    if mp is None:
        print("not isomorphic")
        return NEGATIVE
    print("isomorphic")
    if a.mapping:
        for v in range(g.n):
            print(f"{g.label(v)} -> {h.label(mp[v])}")
    return OK


def _lemma_key(text: str) -> str:
    t = text.lower().removeprefix("lemma")
    t = t.replace("observation", "obs").replace(" ", "")
    if t in CHECKS:
        return t
    raise UsageError(f"unknown lemma {text!r}; choose from {', '.join(CHECKS)}")


def _cmd_lemmas(a) -> int:
    if a.file:
        g = read_graph(a.file)
    elif a.family and a.order is not None:
        g = generate(CubeSpec(a.family.upper(), a.order, a.variant))
    else:
        raise UsageError("give FAMILY ORDER or --file")
    if a.lemma:
        keys = [_lemma_key(x) for x in a.lemma]
    else:
        keys = list(ORDER4 if g.n == 16 else ORDER3)
    failed = errored = False
    for key in keys:
        try:
            rep = CHECKS[key](g)
        except GraphError as exc:
            print(f"[ERROR] {key} on {g.name or 'graph'}: {exc}")
            errored = True
            continue
        print(rep.line())
        if a.verbose or key == "obs4.4":
            for k, v in rep.details.items():
                if v is not None:
                    print(f"    {k}: {v}")
        failed |= not rep.passed
    if errored:
        return ERROR
    return NEGATIVE if failed else OK


def _budget(a, default: Optional[str]) -> Budget:
    raw = a.budget or os.environ.get(BUDGET_ENV) or default
    wall = parse_duration(raw) if raw else None
    return Budget(wall=wall, nodes=a.nodes, jobs=a.jobs)


def _cmd_cr(a) -> int:
    from .heuristic import cr_upper_bound

    g = _graph_arg(a.graph)
    mode = a.mode
    if mode == "upper":
        ub = cr_upper_bound(g, effort=a.effort, seed=a.seed)
        lower = euler_girth_bound(g)
        res = CrResult(g.name, lower, "euler-girth", ub.k, ub.planarization, ub.drawing, lower == ub.k, 0.0, 0, ub.seed,
                       [f"best of {ub.restarts} restarts"])
    else:
        budget = _budget(a, "60s" if mode == "bounds" else None)
        res = crossing_number(g, budget, effort=a.effort, seed=a.seed, use_symmetry=not a.no_symmetry)
    name = g.name or a.graph
    if res.exact:
        print(f"{name}: cr = {res.lower} (exact; {res.lower_source})")
    else:
        print(f"{name}: {res.lower} <= cr <= {res.upper}  (lower: {res.lower_source})")
    for line in res.log:
        print(f"  {line}")
    if a.out:
        write_json(result_record(g, res, mode, a.effort), a.out)
        print(f"result record -> {a.out}")
    if res.drawing is not None:
        if a.drawing:
            write_drawing(res.drawing, a.drawing, crossing_count(res.drawing))
            print(f"drawing -> {a.drawing}")
        if a.svg:
            export_svg(res.drawing, a.svg)
            print(f"svg -> {a.svg}")
    if mode == "exact" and not res.exact:
        return NEGATIVE
    return OK


def _cmd_verify(a) -> int:
    data = load_json(a.file)
    g = read_graph(a.graph) if a.graph else None
    kind = data.get("format")
    if kind == RESULT_FORMAT:
        problems = verify_record(data, g)
    elif kind == DRAWING_FORMAT:
        d = drawing_from_json(data, g)
        problems = verify_drawing(d, data.get("crossings"))
    else:
        raise UsageError(f"{a.file}: unknown format {kind!r}")
    if problems:
        for p in problems:
            print(f"INVALID: {p}")
        return NEGATIVE
    print("valid")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubecross", description="Hypercube variants and their crossing numbers.")
    p.add_argument("--version", action="version", version=f"cubecross {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a cube graph in the text graph format")
    s.add_argument("family", help="Q, CQ, LTQ or MQ")
    s.add_argument("order", type=int)
    s.add_argument("--variant", type=int, default=0, help="x0 for MQ (0 or 1)")
    s.add_argument("--out", help="output path (default stdout)")
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("iso", help="test two graphs for isomorphism")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--mapping", action="store_true", help="print the vertex mapping")
    s.set_defaults(func=_cmd_iso)

    s = sub.add_parser("lemmas", help="run the exhaustive cut and partition checkers")
    s.add_argument("family", nargs="?")
    s.add_argument("order", nargs="?", type=int)
    s.add_argument("--variant", type=int, default=0)
    s.add_argument("--file", help="graph file instead of a family")
    s.add_argument("--lemma", action="append", help=f"one of {', '.join(CHECKS)} (repeatable)")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=_cmd_lemmas)

    s = sub.add_parser("cr", help="crossing number bounds, exact values and drawings")
    s.add_argument("graph", help="graph file or family name (CQ4, 0-MQ3, ...)")
    m = s.add_mutually_exclusive_group()
    m.add_argument("--exact", dest="mode", action="store_const", const="exact")
    m.add_argument("--upper", dest="mode", action="store_const", const="upper")
    m.add_argument("--bounds", dest="mode", action="store_const", const="bounds")
    s.set_defaults(mode="exact")
    s.add_argument("--budget", help=f"wall clock, e.g. 60s or 2h (default ${BUDGET_ENV})")
    s.add_argument("--nodes", type=int, help="search node cap")
    s.add_argument("--jobs", type=int, default=1, help="worker processes for the search")
    s.add_argument("--effort", type=int, default=32, help="heuristic restarts")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--no-symmetry", action="store_true", help="skip root orbit reduction")
    s.add_argument("--out", help="result record (JSON)")
    s.add_argument("--drawing", help="drawing file (JSON)")
    s.add_argument("--svg", help="SVG rendering of the drawing")
    s.set_defaults(func=_cmd_cr)

    s = sub.add_parser("verify", help="re-check a drawing file or result record")
    s.add_argument("file")
    s.add_argument("--graph", help="graph file the input must match")
    s.set_defaults(func=_cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return a.func(a)
    except (UsageError, FormatError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
