"""Plain-text formats for dual scalars, dual matrices and gain graphs.

A scalar is written ``w x y z | w x y z`` (standard part, then dual part),
with one component for dual numbers, two for dual complex numbers and four
for dual quaternions.  The dual half may be omitted.

Matrix file::

    # comment
    c 3 3
    1 2  1 0 | 0 1
    ...

The header is ``ring n m``; each further line is ``i j <scalar>`` with
1-based indices, and omitted entries are zero.  A graph file has the header
``ring n m`` (``m`` = number of edges) followed by ``m`` lines ``i j <gain>``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .dmat import DualMatrix
from .gaingraph import ConfigScheme, UnitGainGraph
from .ground import Ring
from .ring import DualScalar, Quaternion

__all__ = [
    "FormatError",
    "parse_scalar",
    "format_scalar",
    "parse_matrix",
    "format_matrix",
    "parse_graph",
    "parse_scheme",
    "format_graph",
    "read_matrix",
    "read_graph",
    "read_scheme",
]


class FormatError(ValueError):
    """Malformed text input; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _components(tokens: list[str], ring: Ring) -> np.ndarray:
    k = ring.ncomp
    if len(tokens) != k:
        raise ValueError(f"expected {k} component(s) for ring {ring.value!r}, got {len(tokens)}")
    out = np.zeros(4)
    out[:k] = [float(t) for t in tokens]
    return out


def parse_scalar(text: str, ring: Ring | str) -> DualScalar:
    ring = Ring.parse(ring)
    std, _, dual = text.partition("|")
    s = _components(std.split(), ring)
    d = _components(dual.split(), ring) if dual.strip() else np.zeros(4)
    return DualScalar(Quaternion.from_array(s), Quaternion.from_array(d), ring)


def format_scalar(x: DualScalar) -> str:
    k = x.ring.ncomp
    s = x.standard.as_array()[:k]
    d = x.dual.as_array()[:k]
    return " ".join(repr(float(v)) for v in s) + " | " + " ".join(repr(float(v)) for v in d)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _header(lines) -> tuple[Ring, int, int, int]:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatError("empty input: missing 'ring n m' header") from None
    parts = line.split()
    if len(parts) != 3:
        raise FormatError(f"header must be 'ring n m', got {line!r}", lineno)
    try:
        ring = Ring.parse(parts[0])
        n, m = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise FormatError(str(exc), lineno) from None
    if n < 0 or m < 0:
        raise FormatError("negative size in header", lineno)
    return ring, n, m, lineno


def _entry(lineno: int, line: str, ring: Ring, n: int, m: int) -> tuple[int, int, DualScalar]:
    parts = line.split(None, 2)
    if len(parts) < 3:
        raise FormatError(f"expected 'i j <scalar>', got {line!r}", lineno)
    try:
        i, j = int(parts[0]), int(parts[1])
        value = parse_scalar(parts[2], ring)
    except ValueError as exc:
        raise FormatError(str(exc), lineno) from None
    if not (1 <= i <= n and 1 <= j <= m):
        raise FormatError(f"index ({i}, {j}) outside {n} x {m}", lineno)
    return i - 1, j - 1, value


def parse_matrix(text: str) -> DualMatrix:
    lines = _content_lines(text)
    ring, n, m, _ = _header(lines)
    out = DualMatrix.zeros(n, m, ring)
    seen = set()
    for lineno, line in lines:
        i, j, v = _entry(lineno, line, ring, n, m)
        if (i, j) in seen:
            raise FormatError(f"entry ({i + 1}, {j + 1}) given twice", lineno)
        seen.add((i, j))
        out.standard[i, j] = v.standard.as_array()
        out.dual[i, j] = v.dual.as_array()
    return out


def format_matrix(A: DualMatrix) -> str:
    n, m = A.shape
    rows = [f"{A.ring.value} {n} {m}"]
    for i in range(n):
        for j in range(m):
            if np.any(A.standard[i, j]) or np.any(A.dual[i, j]):
                rows.append(f"{i + 1} {j + 1} {format_scalar(A[i, j])}")
    return "\n".join(rows) + "\n"


def _edge_lines(text: str):
    lines = _content_lines(text)
    ring, n, m, head = _header(lines)
    edges = []
    for lineno, line in lines:
        i, j, g = _entry(lineno, line, ring, n, n)
        if i == j:
            raise FormatError(f"self-loop at vertex {i + 1}", lineno)
        edges.append((lineno, i, j, g))
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}", head)
    return ring, n, edges


def parse_graph(text: str) -> UnitGainGraph:
    ring, n, edges = _edge_lines(text)
    seen: dict[tuple[int, int], int] = {}
    for lineno, i, j, _ in edges:
        key = (min(i, j), max(i, j))
        if key in seen:
            raise FormatError(f"edge {key[0] + 1}-{key[1] + 1} repeats line {seen[key]}", lineno)
        seen[key] = lineno
    return UnitGainGraph(n, tuple((i, j, g) for _, i, j, g in edges), ring)


def parse_scheme(text: str) -> ConfigScheme:
    """Like :func:`parse_graph`, but both orientations of an edge may be listed."""
    ring, n, edges = _edge_lines(text)
    gains = {}
    for lineno, i, j, g in edges:
        if (i, j) in gains:
            raise FormatError(f"edge {i + 1} -> {j + 1} given twice", lineno)
        gains[(i, j)] = g
    return ConfigScheme(n, gains, ring)


def format_graph(g: UnitGainGraph) -> str:
    rows = [f"{g.ring.value} {g.n} {g.m}"]
    rows += [f"{i + 1} {j + 1} {format_scalar(q)}" for i, j, q in g.edges]
    return "\n".join(rows) + "\n"


def read_matrix(path: str | Path) -> DualMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def read_graph(path: str | Path) -> UnitGainGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def read_scheme(path: str | Path) -> ConfigScheme:
    return parse_scheme(Path(path).read_text(encoding="utf-8"))
