"""File formats: plain-text graphs, JSON drawings and JSON result records.

Graph files are line based::

    # name: CQ3
    p 8 12
    l 0 000
    e 0 1

Drawings and result records are JSON.  Coordinates are written as
``"num/den"`` strings so they survive a round trip bit for bit.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from . import __version__
from .geometry import PolylineDrawing, as_fraction, crossing_count, validate_good
from .graph import Graph, GraphError
from .planarization import Planarization, verify_certificate

PathLike = Union[str, Path]

DRAWING_FORMAT = "cubecross-drawing"
RESULT_FORMAT = "cubecross-result"


class FormatError(GraphError):
    """Malformed input file."""


# -- graphs -----------------------------------------------------------------


def parse_graph(text: str, name: str = "") -> Graph:
    n = m = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:") and not name:
                name = body[5:].strip()
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                if n is not None:
                    raise FormatError(f"line {lineno}: second header")
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "l" and len(parts) == 3:
                v = int(parts[1])
                if v in labels:
                    raise FormatError(f"line {lineno}: vertex {v} labelled twice")
                labels[v] = parts[2]
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise FormatError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from None
        if parts[0] != "p" and n is None:
            raise FormatError(f"line {lineno}: data before the 'p' header")
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, found {len(edges)}")
    lab = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise FormatError("labels must cover every vertex or none")
        lab = tuple(labels[v] for v in range(n))
    try:
        g = Graph(n, tuple(edges), lab, name)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    if g.m != m:  # pragma: no cover - Graph rejects duplicates first
        raise FormatError("duplicate edges")
    return g


def format_graph(g: Graph) -> str:
    """Canonical text: header, labels by vertex, edges sorted."""
    out = []
    if g.name:
        out.append(f"# name: {g.name}")
    out.append(f"p {g.n} {g.m}")
    if g.labels is not None:
        out.extend(f"l {v} {s}" for v, s in enumerate(g.labels))
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: PathLike) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def graph_to_json(g: Graph) -> dict:
    d = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels is not None:
        d["labels"] = list(g.labels)
    if g.name:
        d["name"] = g.name
    return d


def graph_from_json(d: dict) -> Graph:
    try:
        return Graph(int(d["n"]), tuple(tuple(e) for e in d["edges"]), d.get("labels"), d.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad inline graph: {exc}") from None


# -- drawings ---------------------------------------------------------------


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _unq(s) -> Fraction:
    if not isinstance(s, str):
        raise FormatError(f"coordinate {s!r} must be a 'num/den' string")
    try:
        return as_fraction(s)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad coordinate {s!r}") from None


def drawing_to_json(d: PolylineDrawing, claimed: Optional[int] = None) -> dict:
    out = {
        "format": DRAWING_FORMAT,
        "version": 1,
        "graph": graph_to_json(d.graph),
        "positions": [[_q(x), _q(y)] for x, y in d.positions],
        "bends": [[[_q(x), _q(y)] for x, y in bl] for bl in d.bends],
    }
    if claimed is not None:
        out["crossings"] = claimed
    return out


def drawing_from_json(data: dict, graph: Optional[Graph] = None) -> PolylineDrawing:
    """Rebuild a drawing; ``graph`` overrides (and must match) any inline graph."""
    if data.get("format") != DRAWING_FORMAT:
        raise FormatError("not a drawing file")
    g = graph
    if "graph" in data:
        inline = graph_from_json(data["graph"])
        if g is not None and (g.n != inline.n or g.edges != inline.edges):
            raise FormatError("drawing was made for a different graph")
        g = g or inline
    if g is None:
        raise FormatError("drawing has no inline graph and none was supplied")
    pos = tuple((_unq(x), _unq(y)) for x, y in data["positions"])
    bends = tuple(tuple((_unq(x), _unq(y)) for x, y in bl) for bl in data.get("bends", [[] for _ in g.edges]))
    return PolylineDrawing(g, pos, bends)


def write_drawing(d: PolylineDrawing, path: PathLike, claimed: Optional[int] = None) -> None:
    Path(path).write_text(json.dumps(drawing_to_json(d, claimed), indent=1) + "\n", encoding="utf-8")


def read_drawing(path: PathLike, graph: Optional[Graph] = None) -> tuple[PolylineDrawing, Optional[int]]:
    data = _load_json(path)
    return drawing_from_json(data, graph), data.get("crossings")


# -- result records ---------------------------------------------------------


def result_record(g: Graph, res, mode: str, effort: Optional[int] = None) -> dict:
    """JSON-ready record of a :class:`CrResult`."""
    return {
        "format": RESULT_FORMAT,
        "version": 1,
        "tool_version": __version__,
        "spec": g.name,
        "graph": graph_to_json(g),
        "mode": mode,
        "lower": res.lower,
        "lower_source": res.lower_source,
        "upper": res.upper,
        "exact": res.exact,
        "certificate": res.certificate.to_json() if res.certificate is not None else None,
        "seed": res.seed,
        "effort": effort,
        "elapsed_s": round(res.elapsed, 3),
        "nodes": res.nodes,
        "log": list(res.log),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def write_json(data: dict, path: PathLike) -> None:
    Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def _load_json(path: PathLike) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def load_json(path: PathLike) -> dict:
    return _load_json(path)


def verify_record(data: dict, graph: Optional[Graph] = None) -> list[str]:
    """Problems with a result record; empty when the certificate backs the claim."""
    if data.get("format") != RESULT_FORMAT:
        return ["not a result record"]
    g = graph_from_json(data["graph"])
    problems = []
    if graph is not None and (graph.n != g.n or graph.edges != g.edges):
        problems.append("record was made for a different graph")
        return problems
    upper, lower = data.get("upper"), data.get("lower")
    if upper is not None and lower is not None and lower > upper:
        problems.append(f"lower bound {lower} exceeds upper bound {upper}")
    if data.get("exact") and lower != upper:
        problems.append("exact flag set but bounds differ")
    cert = data.get("certificate")
    if cert is None:
        if upper is not None:
            problems.append("upper bound claimed without a certificate")
        return problems
    p = Planarization.from_json(g, cert)
    if not verify_certificate(g, p):
        problems.append("certificate fails verification")
    if {tuple(c) for c in cert.get("crossings", [])} != set(p.crossings):
        problems.append("crossing list disagrees with the per-edge orders")
    if upper is not None and p.k != upper:
        problems.append(f"certificate has {p.k} crossings but upper bound says {upper}")
    return problems


def verify_drawing(d: PolylineDrawing, claimed: Optional[int]) -> list[str]:
    rep = validate_good(d)
    if not rep.good:
        return [f"drawing is not good: {rep.summary()}"]
    k = crossing_count(d)
    if claimed is not None and k != claimed:
        return [f"drawing has {k} crossings, file claims {claimed}"]
    return []
