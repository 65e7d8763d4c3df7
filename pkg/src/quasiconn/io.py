"""Reading and writing graphs: edge-list text and header-less graph6."""

from __future__ import annotations

import hashlib
from pathlib import Path

import networkx as nx

from .errors import GraphFormatError
from .graph import Graph

FORMATS = ("edge-list", "graph6")


def guess_format(path: str | Path) -> str:
    return "graph6" if Path(path).suffix in (".g6", ".graph6") else "edge-list"


def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line, 0-based; ``#`` starts a comment.

    A ``# n=K`` comment fixes the vertex count so isolated vertices survive;
    otherwise ids must be dense.
    """
    edges: list[tuple[int, int]] = []
    seen: dict[frozenset, int] = {}
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith("n="):
            try:
                declared = int(comment[2:])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {comment!r}", line=lineno) from None
        parts = body.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {body.strip()!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {body.strip()!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", line=lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", line=lineno)
        key = frozenset((u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u} {v} (first on line {seen[key]})", line=lineno)
        seen[key] = lineno
        edges.append((u, v))
    used = {w for e in edges for w in e}
    n = declared if declared is not None else (max(used) + 1 if used else 0)
    if used and max(used) >= n:
        raise GraphFormatError(f"vertex {max(used)} exceeds declared n={n}")
    if declared is None and len(used) != n:
        missing = sorted(set(range(n)) - used)
        raise GraphFormatError(f"vertex ids are not dense, missing {missing[:5]}; declare '# n=...'")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"# n={g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str, line: int = 1) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string", line=line)
    bad = next((i for i, ch in enumerate(s) if not 63 <= ord(ch) <= 126), None)
    if bad is not None:
        raise GraphFormatError(f"invalid graph6 byte {s[bad]!r}", line=line, offset=bad)
    try:
        h = nx.from_graph6_bytes(s.encode("ascii"))
    except (ValueError, nx.NetworkXError) as exc:
        raise GraphFormatError(f"bad graph6 data: {exc}", line=line) from None
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def format_graph6(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.to_graph6_bytes(h, header=False).decode("ascii").strip() + "\n"


def read_graph(path: str | Path, format: str | None = None) -> Graph:
    fmt = format or guess_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        text = Path(path).read_text(encoding="utf-8" if fmt == "edge-list" else "ascii")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"undecodable input: {exc.reason}", offset=exc.start) from None
    if fmt == "edge-list":
        return parse_edge_list(text)
    rows = [ln for ln in text.splitlines() if ln.strip()]
    if len(rows) != 1:
        raise GraphFormatError(f"expected one graph6 line, found {len(rows)}; use read_graph6_stream")
    return parse_graph6(rows[0])


def read_graph6_stream(path: str | Path) -> list[Graph]:
    out = []
    for i, ln in enumerate(Path(path).read_text(encoding="ascii").splitlines(), 1):
        if ln.strip():
            out.append(parse_graph6(ln, line=i))
    return out


def write_graph(g: Graph, path: str | Path, format: str | None = None) -> None:
    fmt = format or guess_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    Path(path).write_text(format_edge_list(g) if fmt == "edge-list" else format_graph6(g), encoding="ascii")


def digest(g: Graph) -> str:
    """sha256 of the canonical edge list."""
    return hashlib.sha256(format_edge_list(g).encode("ascii")).hexdigest()
