"""
Edge-list parser - "u v" per line, blank lines and '#' comments allowed
"""

import io
import sys
from typing import IO, Dict, List, Tuple, Union

from ..exceptions import GraphParseError
from .graph import Graph

EdgeListSource = Union[bytes, str, IO[bytes], IO[str]]


def _read_lines(source: EdgeListSource) -> List[str]:
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        return source.splitlines()
    else:
        data = source.read()
        if isinstance(data, str):
            return data.splitlines()
    try:
        return data.decode('utf-8').splitlines()
    except UnicodeDecodeError as e:
        raise GraphParseError(f"input is not UTF-8: {e}") from e


def parse_edge_list(source: EdgeListSource) -> Graph:
    """
    Parse an edge list into a simple graph

    Args:
        source: bytes, text, or an open (binary or text) stream

    Returns:
        Graph whose vertex count is max id + 1

    Raises:
        GraphParseError: malformed line, self-loop, duplicate edge,
            an unused vertex id below the maximum, or no edges at all
    """
    edges: List[Tuple[int, int]] = []
    first_seen: Dict[Tuple[int, int], int] = {}

    for line_number, raw in enumerate(_read_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue

        tokens = line.split()
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphParseError(f"expected 'u v' with nonnegative integer ids, got {raw!r}", line_number)

        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line_number)

        key = (min(u, v), max(u, v))
        if key in first_seen:
            raise GraphParseError(
                f"duplicate edge {key[0]} {key[1]} (first on line {first_seen[key]})", line_number
            )
        first_seen[key] = line_number
        edges.append((u, v))

    if not edges:
        raise GraphParseError("no edges in input")

    n = 1 + max(max(u, v) for u, v in edges)
    used = set()
    for u, v in edges:
        used.update((u, v))
    missing = sorted(set(range(n)) - used)
    if missing:
        raise GraphParseError(
            f"vertex ids must be dense 0..{n - 1}; unused id(s): {', '.join(map(str, missing[:10]))}"
        )

    return Graph(n, edges)


def read_edge_list(path: str) -> Graph:
    """Parse a file path, or stdin when path is '-'"""
    if path == '-':
        return parse_edge_list(sys.stdin.buffer)
    with open(path, 'rb') as f:
        return parse_edge_list(f)


def format_edge_list(g: Graph, comment: str = "") -> str:
    buffer = io.StringIO()
    if comment:
        buffer.write(f"# {comment}\n")
    buffer.write(g.to_edge_list())
    return buffer.getvalue()
