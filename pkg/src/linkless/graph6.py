"""graph6 encoding: one printable line per graph.

Layout: N(n) followed by the upper triangle of the adjacency matrix read
column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per
byte, big-endian, zero-padded, each byte offset by 63.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph, GraphError

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise Graph6Error(f"negative order {n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"order {n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte order field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte order field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def encode_bytes(g: Graph) -> bytes:
    out = bytearray(_encode_n(g.n))
    acc = 0
    k = 0
    adj = g.adj
    for j in range(1, g.n):
        aj = adj[j]
        for i in range(j):
            acc = (acc << 1) | (aj >> i & 1)
            k += 1
            if k == 6:
                out.append(acc + 63)
                acc = k = 0
    if k:
        out.append((acc << (6 - k)) + 63)
    return bytes(out)


def encode(g: Graph) -> str:
    return encode_bytes(g).decode("ascii")


def decode(line: str | bytes) -> Graph:
    """Parse one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    if isinstance(line, str):
        line = line.encode("ascii", errors="replace")
    data = line.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    if data[:1] == b":" or data[:1] == b";":
        raise Graph6Error("sparse6/digraph6 input is not graph6")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error(f"invalid graph6 byte in {data[:20]!r}")
    n, off = _decode_n(data)
    body = data[off:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    pos = 0
    j, i = 1, 0
    for c in body:
        val = c - 63
        for s in range(5, -1, -1):
            if pos >= nbits:
                if val >> s & 1:
                    raise Graph6Error("non-zero padding bits")
                continue
            if val >> s & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return Graph._trusted(n, adj)


def read_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode every non-blank line, skipping blank lines."""
    for line in lines:
        if line.strip():
            yield decode(line)
