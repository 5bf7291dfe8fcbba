"""Graph and centrality-result file formats.

Edge lists are UTF-8 text: a header line ``n <count>`` followed by one
``i j`` line per edge with ``i < j``. Blank lines and ``#`` comments are
ignored on input. The JSON form is ``{"n": int, "edges": [[i, j], ...]}``.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .graphs import Graph, build_graph
from .result import CentralityResult

__all__ = [
    "GraphFormatError",
    "parse_edge_list",
    "format_edge_list",
    "read_graph",
    "write_graph",
    "graph_to_json",
    "graph_from_json",
    "result_to_csv",
    "result_from_csv",
]


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError(f"expected header 'n <count>', got {raw!r}", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"vertex count is not an integer: {parts[1]!r}", lineno) from None
            if n < 1:
                raise GraphFormatError(f"vertex count must be positive, got {n}", lineno)
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'i j', got {raw!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"vertex labels must be integers, got {raw!r}", lineno) from None
        if not (0 <= i < n and 0 <= j < n):
            raise GraphFormatError(f"edge ({i}, {j}) has an endpoint outside [0, {n})", lineno)
        if i == j:
            raise GraphFormatError(f"self-loop ({i}, {j})", lineno)
        edges.append((i, j))
    if n is None:
        raise GraphFormatError("missing 'n <count>' header")
    return build_graph(edges, n)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{i} {j}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        d = json.loads(text)
        n, edges = int(d["n"]), d["edges"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"invalid graph JSON: {exc}") from None
    return build_graph([tuple(e) for e in edges], n)


def read_graph(path) -> Graph:
    """Read a graph file; ``.json`` selects the JSON form, anything else the edge list."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return graph_from_json(text)
    return parse_edge_list(text)


def write_graph(g: Graph, path) -> None:
    path = Path(path)
    text = graph_to_json(g) if path.suffix.lower() == ".json" else format_edge_list(g)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def result_to_csv(result: CentralityResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex", "score"])
    for j, s in enumerate(result.scores):
        w.writerow([j, repr(float(s))])
    return buf.getvalue()


def result_from_csv(text: str, measure: str) -> CentralityResult:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["vertex", "score"]:
        raise ValueError("expected a 'vertex,score' header")
    body = sorted((int(v), float(s)) for v, s in rows[1:])
    if [v for v, _ in body] != list(range(len(body))):
        raise ValueError("vertex column must enumerate 0..n-1")
    return CentralityResult(measure, [s for _, s in body])
