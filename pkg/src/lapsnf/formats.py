"""graph6 and edge-list formats, plus streaming readers for graph files."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

from .graph import MAX_VERTICES, Graph, GraphError, from_edges, pair_index

G6_HEADER = b">>graph6<<"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        super().__init__(self.describe())

    def describe(self) -> str:
        where = ""
        if self.source is not None:
            where = f"{self.source}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.message}" if where else self.message


@dataclass(frozen=True)
class GraphRecord:
    source: str
    graph: Graph


# graph6

def parse_graph6(line: bytes | str) -> Graph:
    data = line.encode("ascii", "replace") if isinstance(line, str) else bytes(line)
    data = data.rstrip(b"\r\n")
    if data.startswith(G6_HEADER):
        data = data[len(G6_HEADER):]
    if not data:
        raise ParseError("empty graph6 string")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b} at offset {pos} is outside 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) >= 2 and data[1] == 126:
            raise ParseError(f"graph6 36-bit size form exceeds the {MAX_VERTICES}-vertex limit")
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
        if n < 63:
            raise ParseError(f"extended size form used for n = {n} < 63")
    if n == 0 or n > MAX_VERTICES:
        raise ParseError(f"unsupported vertex count {n}")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = data[pos:]
    if len(body) < need:
        raise ParseError(f"truncated graph6 adjacency: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise ParseError(f"{len(body) - need} trailing bytes after graph6 adjacency")
    bits = 0
    for b in body:
        bits = bits << 6 | (b - 63)
    pad = need * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise ParseError("nonzero graph6 padding bits")
    bits >>= pad
    edges = []
    k = nbits - 1  # stream position 0 is the most significant bit
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                edges.append((i, j))
            k -= 1
    return from_edges(n, edges)


def emit_graph6(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        out = bytearray([n + 63])
    else:
        out = bytearray([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    nbits = n * (n - 1) // 2
    bits = 0
    for i, j in g.edges():
        bits |= 1 << (nbits - 1 - pair_index(i, j))
    need = -(-nbits // 6)
    bits <<= need * 6 - nbits
    for k in reversed(range(need)):
        out.append((bits >> (6 * k) & 63) + 63)
    return bytes(out)


# edge lists

def parse_edge_list(text: str) -> Graph:
    graphs = list(_edge_list_blocks(text.splitlines()))
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0][1]


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{i} {j}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


def _edge_list_blocks(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(header_line, graph)`` for every ``n <count>`` block."""
    n = start = None
    edges: list[tuple[int, int]] = []

    def close():
        try:
            return from_edges(n, edges)
        except GraphError as exc:
            raise ParseError(str(exc), start) from None

    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                yield start, close()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"malformed header {raw.strip()!r}", lineno)
            n, start, edges = int(parts[1]), lineno, []
            if not 1 <= n <= MAX_VERTICES:
                raise ParseError(f"vertex count {n} outside 1..{MAX_VERTICES}", lineno)
            continue
        if n is None:
            raise ParseError("edge before any 'n <count>' header", lineno)
        try:
            u, v = (int(p) for p in parts)
        except ValueError:
            raise ParseError(f"malformed edge line {raw.strip()!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n = {n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    if n is not None:
        yield start, close()


# files

FORMATS = ("g6", "edges")


def detect_format(path: str, first_line: str | None = None) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".g6":
        return "g6"
    if suffix == ".el":
        return "edges"
    if first_line is not None and first_line.split()[:1] == ["n"]:
        return "edges"
    return "g6"


def _warn(err: ParseError) -> None:
    print(f"warning: skipped {err.describe()}", file=sys.stderr)


def read_records(stream: TextIO, source: str, fmt: str | None = None, lenient: bool = False,
                 on_skip: Callable[[ParseError], None] = _warn) -> Iterator[GraphRecord]:
    """Stream graphs from an open text file.

    Errors raise ``ParseError`` carrying the line number, unless ``lenient``,
    in which case the bad graph6 line is reported through ``on_skip``.
    """
    lines = iter(stream)
    head: list[str] = []
    for line in lines:
        head.append(line)
        if line.split("#", 1)[0].strip():
            break
    fmt = fmt or detect_format(source, head[-1] if head else None)
    if fmt not in FORMATS:
        raise ParseError(f"unknown format {fmt!r}")

    def all_lines():
        yield from head
        yield from lines

    if fmt == "edges":
        try:
            for lineno, g in _edge_list_blocks(all_lines()):
                yield GraphRecord(f"{source}:{lineno}", g)
        except ParseError as exc:
            if not lenient:
                raise ParseError(exc.message, exc.line, source) from None
            # an edge-list error leaves the block structure unknown, so stop here
            on_skip(ParseError(exc.message, exc.line, source))
        return

    for lineno, line in enumerate(all_lines(), 1):
        text = line.strip()
        if not text:
            continue
        try:
            g = parse_graph6(text)
        except (ParseError, GraphError) as exc:
            err = ParseError(getattr(exc, "message", str(exc)), lineno, source)
            if not lenient:
                raise err from None
            on_skip(err)
            continue
        yield GraphRecord(f"{source}:{lineno}", g)


def read_path(path: str, fmt: str | None = None, lenient: bool = False) -> Iterator[GraphRecord]:
    if path == "-":
        yield from read_records(sys.stdin, "<stdin>", fmt, lenient)
        return
    with open(path, encoding="ascii", errors="replace") as fh:
        yield from read_records(fh, path, fmt, lenient)
