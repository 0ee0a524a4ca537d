"""Hypergraph data model, derived quantities, and text file I/O.

Vertices are 0-based ints internally and 1-based in all file formats.
Hyperedges are non-empty vertex sets; repeated identical edges are allowed
and count separately towards degrees.

HGR format (UTF-8, LF or CRLF):
    line 1:   <num_edges> <num_vertices>
    lines 2+: one edge per line, space-separated 1-based vertex-ids
Lines starting with ``%`` are comments. Trailing whitespace is tolerated.

Colouring files hold one integer colour per line (line i = colour of edge i)
with an optional ``# palette <C>`` header. Weights files hold one rational
per line, written either as ``p/q`` or as a decimal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import FormatError

__all__ = [
    "Hypergraph",
    "Colouring",
    "Weighting",
    "parse_hypergraph",
    "serialize_hypergraph",
    "parse_colouring",
    "serialize_colouring",
    "parse_weights",
    "serialize_weights",
]


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph: a vertex count and an ordered list of edges."""

    n_vertices: int
    edges: tuple[frozenset[int], ...]

    def __init__(self, n_vertices: int, edges: Iterable[Iterable[int]]):
        if n_vertices < 0:
            raise ValueError("n_vertices must be non-negative")
        norm = []
        for idx, raw in enumerate(edges):
            members = list(raw)
            if not members:
                raise ValueError(f"edge {idx} is empty")
            fs = frozenset(members)
            if len(fs) != len(members):
                raise ValueError(f"edge {idx} contains a duplicate vertex")
            for v in fs:
                if not 0 <= v < n_vertices:
                    raise ValueError(f"edge {idx}: vertex-id {v} out of range")
            norm.append(fs)
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", tuple(norm))
        degrees = [0] * n_vertices
        incidence: list[list[int]] = [[] for _ in range(n_vertices)]
        for e, fs in enumerate(self.edges):
            for v in fs:
                degrees[v] += 1
                incidence[v].append(e)
        object.__setattr__(self, "_degrees", tuple(degrees))
        object.__setattr__(self, "_incidence", tuple(tuple(lst) for lst in incidence))

    def degree(self, v: int) -> int:
        """Number of edges containing v (multi-edges count separately)."""
        self._check_vertex(v)
        return self._degrees[v]

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Edge indices containing v, in ascending order."""
        self._check_vertex(v)
        return self._incidence[v]

    def min_degree(self) -> int:
        if self.n_vertices == 0:
            raise ValueError("min_degree is undefined for an empty vertex set")
        return min(self._degrees)

    def max_degree(self) -> int:
        if self.n_vertices == 0:
            raise ValueError("max_degree is undefined for an empty vertex set")
        return max(self._degrees)

    def rank(self) -> int:
        """Largest edge size, or 0 when there are no edges."""
        return max((len(e) for e in self.edges), default=0)

    def linearity_witness(self) -> Optional[tuple[int, int]]:
        """First pair of edge indices sharing two or more vertices, if any.

        Two edges share >= 2 vertices exactly when they share a vertex pair,
        so one pass over the pairs inside each edge suffices.
        """
        seen: dict[tuple[int, int], int] = {}
        for e, fs in enumerate(self.edges):
            for pair in itertools.combinations(sorted(fs), 2):
                if pair in seen:
                    return (seen[pair], e)
                seen[pair] = e
        return None

    def is_linear(self) -> bool:
        """True iff every two edges intersect in at most one vertex."""
        return self.linearity_witness() is None

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n_vertices:
            raise ValueError(f"vertex-id {v} out of range [0, {self.n_vertices})")


@dataclass(frozen=True)
class Colouring:
    """Edge colouring: one 1-based colour per edge plus the palette size."""

    colours: tuple[int, ...]
    palette_size: int

    def __init__(self, colours: Iterable[int], palette_size: int):
        colours = tuple(int(c) for c in colours)
        palette_size = int(palette_size)
        if palette_size < 0:
            raise ValueError("palette_size must be non-negative")
        for i, c in enumerate(colours):
            if not 1 <= c <= palette_size:
                raise ValueError(
                    f"colour {c} of edge {i} outside palette [1, {palette_size}]"
                )
        object.__setattr__(self, "colours", colours)
        object.__setattr__(self, "palette_size", palette_size)

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, i: int) -> int:
        return self.colours[i]


@dataclass(frozen=True)
class Weighting:
    """One rational weight in [0, 1] per edge, kept exact."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Iterable):
        ws = tuple(Fraction(w) for w in weights)
        for i, w in enumerate(ws):
            if not 0 <= w <= 1:
                raise ValueError(f"weight {w} of edge {i} outside [0, 1]")
        object.__setattr__(self, "weights", ws)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for w in self.weights)


def _decode(text: str | bytes) -> str:
    if isinstance(text, bytes):
        return text.decode("utf-8")
    return text


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(1-based line number, stripped content) for non-comment lines."""
    out = []
    for no, line in enumerate(_decode(text).splitlines(), start=1):
        if line.lstrip().startswith("%"):
            continue
        out.append((no, line.strip()))
    return out


def parse_hypergraph(text: str | bytes) -> Hypergraph:
    """Parse HGR text into a Hypergraph, preserving edge order."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError(1, "missing header")
    head_no, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise FormatError(head_no, f"malformed header {head!r}; expected '<num_edges> <num_vertices>'")
    try:
        n_edges, n_vertices = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(head_no, f"malformed header {head!r}; counts must be integers") from None
    if n_edges < 0 or n_vertices < 0:
        raise FormatError(head_no, "header counts must be non-negative")

    edges: list[list[int]] = []
    last_no = head_no
    for no, line in lines[1:]:
        last_no = no
        if not line:
            raise FormatError(no, "empty edge line")
        if len(edges) == n_edges:
            raise FormatError(no, f"unexpected extra edge line; header declared {n_edges} edges")
        members = []
        seen: set[int] = set()
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(no, f"invalid vertex-id {tok!r}") from None
            if not 1 <= v <= n_vertices:
                raise FormatError(no, f"vertex-id {v} out of range [1, {n_vertices}]")
            if v in seen:
                raise FormatError(no, f"duplicate vertex {v} in edge")
            seen.add(v)
            members.append(v - 1)
        edges.append(members)
    if len(edges) != n_edges:
        raise FormatError(last_no, f"expected {n_edges} edges, found {len(edges)}")
    return Hypergraph(n_vertices, edges)


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"{len(h.edges)} {h.n_vertices}"]
    for fs in h.edges:
        lines.append(" ".join(str(v + 1) for v in sorted(fs)))
    return "\n".join(lines) + "\n"


def parse_colouring(text: str | bytes) -> Colouring:
    """Parse a colouring file; palette defaults to the largest colour used."""
    lines = _content_lines(text)
    palette: Optional[int] = None
    start = 0
    if lines and lines[0][1].startswith("#"):
        no, head = lines[0]
        parts = head.lstrip("#").split()
        if len(parts) != 2 or parts[0] != "palette":
            raise FormatError(no, f"malformed colouring header {head!r}; expected '# palette <C>'")
        try:
            palette = int(parts[1])
        except ValueError:
            raise FormatError(no, f"palette size {parts[1]!r} is not an integer") from None
        start = 1
    colours = []
    for no, line in lines[start:]:
        if not line:
            raise FormatError(no, "empty line in colouring file")
        try:
            c = int(line)
        except ValueError:
            raise FormatError(no, f"invalid colour {line!r}") from None
        if c < 1:
            raise FormatError(no, f"colour {c} must be at least 1")
        colours.append(c)
    if palette is None:
        palette = max(colours, default=0)
    try:
        return Colouring(colours, palette)
    except ValueError as exc:
        raise FormatError(lines[start][0] if len(lines) > start else 1, str(exc)) from None


def serialize_colouring(c: Colouring, include_palette: bool = True) -> str:
    lines = []
    if include_palette:
        lines.append(f"# palette {c.palette_size}")
    lines.extend(str(col) for col in c.colours)
    return "\n".join(lines) + "\n"


def parse_weights(text: str | bytes, expected: int | None = None) -> Weighting:
    """Parse a weights file; entries may be 'p/q' or decimals. When
    expected is given, the entry count must match it exactly."""
    weights = []
    last = 0
    for no, line in _content_lines(text):
        last = no
        if not line:
            raise FormatError(no, "empty line in weights file")
        try:
            w = Fraction(line)
        except (ValueError, ZeroDivisionError):
            raise FormatError(no, f"invalid weight {line!r}") from None
        if not 0 <= w <= 1:
            raise FormatError(no, f"weight {w} outside [0, 1]")
        weights.append(w)
    if expected is not None and len(weights) != expected:
        raise FormatError(
            last, f"expected {expected} weights, found {len(weights)}"
        )
    return Weighting(weights)


def serialize_weights(w: Weighting) -> str:
    return "\n".join(str(x) for x in w.weights) + "\n"
