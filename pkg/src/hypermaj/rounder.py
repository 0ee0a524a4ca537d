"""Discrepancy rounding of fractional edge weights.

Given weights z: E -> [0, 1], produces x: E -> {0, 1} such that at every
vertex the incident x-sum stays strictly within rank(H) of the incident
z-sum. The construction walks the fractional weights along kernel
directions of the constrained-vertex incidence system:

  1. Edges with integral z are fixed immediately.
  2. While some vertex has fractional degree >= r+1, those vertices form
     the constrained set. Their incidence rows over the fractional edges
     have more columns than rows, so the system has a nonzero kernel
     vector d. Moving the fractional weights along d preserves every
     constrained vertex's incident sum exactly.
  3. The step length is the largest t with h + t*d still inside [0, 1];
     every component that lands on 0 or 1 becomes fixed.
  4. Once no vertex is constrained, each remaining fractional edge rounds
     to the nearer integer (ties up). A vertex that left the constrained
     set has at most r fractional edges, each moving by strictly less
     than 1, which gives the strict discrepancy bound.

All arithmetic is exact. The elimination runs on integer matrices
(fraction-free Bareiss, promoted to big ints on potential overflow) and
only the final back-substitution produces rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvariantBreach
from .hypercore import Hypergraph, Weighting

__all__ = [
    "RoundingState",
    "TraceStep",
    "RoundingTrace",
    "build_system",
    "kernel_direction",
    "step_to_boundary",
    "finalize_low_degree",
    "round_weights",
]

_INT64_SAFE = 2**30  # entries above this promote the elimination to big ints


@dataclass
class RoundingState:
    """Working state of one rounding run.

    fixed and frac_edges partition the edge set; h holds the current value
    of every fractional edge, strictly inside (0, 1); constrained lists the
    vertices whose fractional degree is at least rank+1.
    """

    frac_edges: tuple[int, ...]
    fixed: dict[int, int]
    h: dict[int, Fraction]
    constrained: tuple[int, ...]


@dataclass(frozen=True)
class TraceStep:
    n_constrained: int
    n_frac: int
    step: Fraction
    fixed: tuple[int, ...]


@dataclass(frozen=True)
class RoundingTrace:
    """Per-iteration audit of the kernel walk."""

    iterations: tuple[TraceStep, ...]


def build_system(state: RoundingState, h_graph: Hypergraph) -> list[list[int]]:
    """Incidence matrix of constrained vertices (rows) over fractional edges
    (columns), both in ascending id order.

    The fractional degree bound r+1 on rows against edge size at most r
    forces strictly more columns than rows; anything else is a bug in the
    constrained-set maintenance.
    """
    rows = sorted(state.constrained)
    cols = sorted(state.frac_edges)
    if not rows:
        raise ValueError("build_system requires a non-empty constrained set")
    if len(cols) <= len(rows):
        raise InvariantBreach(
            "constrained incidence system must have more columns than rows",
            rows=len(rows),
            cols=len(cols),
        )
    col_index = {e: j for j, e in enumerate(cols)}
    matrix = [[0] * len(cols) for _ in rows]
    for i, v in enumerate(rows):
        for e in h_graph.incident_edges(v):
            j = col_index.get(e)
            if j is not None:
                matrix[i][j] = 1
    return matrix


def _bareiss_first_free(rows_int: list[list[int]], n_cols: int) -> tuple[list[list[int]], int]:
    """Eliminate columns left to right until one yields no pivot.

    Returns the worked matrix (rows permuted, truncated to the first
    n_rows+1 columns) and the index of the first pivot-free column. With
    more columns than rows that index is at most n_rows, so later columns
    never need to be touched.
    """
    n_rows = len(rows_int)
    limit = min(n_cols, n_rows + 1)
    dtype = np.int64
    if rows_int and max(abs(x) for row in rows_int for x in row[:limit]) > _INT64_SAFE:
        dtype = object
    m = np.array([row[:limit] for row in rows_int], dtype=dtype)
    piv = 0
    denom = 1
    for col in range(limit):
        hit = -1
        for i in range(piv, n_rows):
            if m[i, col] != 0:
                hit = i
                break
        if hit < 0:
            return m.tolist(), col
        if hit != piv:
            m[[piv, hit]] = m[[hit, piv]]
        if piv + 1 < n_rows:
            if m.dtype != object and max(abs(int(m.max())), abs(int(m.min()))) > _INT64_SAFE:
                m = m.astype(object)
            pivot = m[piv, col]
            below = m[piv + 1 :]
            m[piv + 1 :] = (below * pivot - np.outer(below[:, col], m[piv])) // denom
            denom = pivot
        else:
            denom = m[piv, col]
        piv += 1
    raise InvariantBreach(
        "no free column found within the first n_rows+1 columns",
        rows=n_rows,
        cols=n_cols,
    )


def _kernel_int(rows_int: list[list[int]], n_cols: int) -> list[Fraction]:
    """Kernel vector under the fixed convention, from integer rows.

    The first pivot-free column is the free variable, set to 1; later
    columns are 0 and earlier (all pivotal) columns are solved by exact
    integer back-substitution scaled by the pivot determinant. The result
    is sign-normalized so its first nonzero entry is positive.
    """
    if not rows_int:
        d = [Fraction(0)] * n_cols
        d[0] = Fraction(1)
        return d
    m, j_free = _bareiss_first_free(rows_int, n_cols)
    det = int(m[j_free - 1][j_free - 1]) if j_free > 0 else 1
    w = [0] * (j_free + 1)
    w[j_free] = det
    for i in range(j_free - 1, -1, -1):
        s = sum(int(m[i][l]) * w[l] for l in range(i + 1, j_free + 1))
        q, rem = divmod(-s, int(m[i][i]))
        if rem != 0:
            raise InvariantBreach("inexact division in kernel back-substitution")
        w[i] = q
    d = [Fraction(w[i], det) for i in range(j_free + 1)]
    d.extend(Fraction(0) for _ in range(n_cols - j_free - 1))
    for entry in d:
        if entry:
            if entry < 0:
                d = [-x for x in d]
            break
    return d


def kernel_direction(matrix: Sequence[Sequence]) -> list[Fraction]:
    """Nonzero rational d with matrix . d = 0, computed deterministically.

    Requires strictly more columns than rows. Convention: eliminate in
    column order; the first free variable is 1 and all remaining free
    variables are 0; the result's first nonzero entry is made positive.
    """
    n_rows = len(matrix)
    if n_rows == 0:
        raise ValueError("kernel_direction requires at least one row")
    n_cols = len(matrix[0])
    if any(len(row) != n_cols for row in matrix):
        raise ValueError("matrix rows must have equal length")
    if n_cols <= n_rows:
        raise ValueError(
            f"kernel_direction requires more columns than rows, got {n_rows}x{n_cols}"
        )
    rows_int = []
    for row in matrix:
        fracs = [Fraction(x) for x in row]
        scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        rows_int.append([int(f * scale) for f in fracs])
    return _kernel_int(rows_int, n_cols)


def step_to_boundary(
    h: Sequence[Fraction], d: Sequence[Fraction]
) -> tuple[Fraction, tuple[int, ...]]:
    """Largest t > 0 with h + t*d inside [0, 1], and the positions that
    land exactly on 0 or 1 at that t.

    Components with d = 0 never move; every h must be strictly interior.
    """
    if len(h) != len(d):
        raise ValueError("h and d must have equal length")
    bounds: list[tuple[int, Fraction]] = []
    for i, (hi, di) in enumerate(zip(h, d)):
        hi = Fraction(hi)
        di = Fraction(di)
        if not 0 < hi < 1:
            raise ValueError(f"h[{i}] = {hi} is not strictly inside (0, 1)")
        if di > 0:
            bounds.append((i, (1 - hi) / di))
        elif di < 0:
            bounds.append((i, hi / -di))
    if not bounds:
        raise ValueError("direction has no movable component")
    t_star = min(b for _, b in bounds)
    hits = tuple(i for i, b in bounds if b == t_star)
    return t_star, hits


def finalize_low_degree(state: RoundingState, h_graph: Hypergraph) -> dict[int, Fraction]:
    """Round the leftover fractional edges to the nearer integer (ties up).

    Only legal once every vertex has fractional degree at most rank; the
    at-most-r remaining edges per vertex each move by strictly less than 1,
    which is what keeps the final discrepancy below r.
    """
    r = h_graph.rank()
    frac_deg: dict[int, int] = {}
    for e in state.frac_edges:
        for v in h_graph.edges[e]:
            frac_deg[v] = frac_deg.get(v, 0) + 1
    for v, fd in frac_deg.items():
        if fd >= r + 1:
            raise InvariantBreach(
                "finalize reached with a constrained vertex remaining",
                vertex=v,
                frac_degree=fd,
                rank=r,
            )
    half = Fraction(1, 2)
    return {
        e: Fraction(1) if state.h[e] >= half else Fraction(0) for e in state.frac_edges
    }


def round_weights(
    h_graph: Hypergraph, z: Weighting, *, verify_invariants: bool = False
) -> tuple[Weighting, RoundingTrace]:
    """Round z to a 0/1 weighting x with, at every vertex v,
    sum_z(v) - r < sum_x(v) < sum_z(v) + r (strict, exact rationals).

    Entries of z already in {0, 1} are returned unchanged. The trace
    records, per kernel-walk iteration, the constrained-set size, the
    fractional edge count, the step length, and the edges fixed.

    verify_invariants additionally recomputes the conservation and
    interiority invariants every iteration (intended for tests; it is
    quadratic in the instance size).
    """
    m = len(h_graph.edges)
    if len(z) != m:
        raise ValueError(f"weighting has {len(z)} entries for {m} edges")
    r = h_graph.rank()
    x: list[Fraction | None] = [None] * m
    h: dict[int, Fraction] = {}
    for e in range(m):
        w = z[e]
        if w.denominator == 1:
            x[e] = w
        else:
            h[e] = w
    frac_deg = [0] * h_graph.n_vertices
    for e in h:
        for v in h_graph.edges[e]:
            frac_deg[v] += 1
    constrained = [v for v in range(h_graph.n_vertices) if frac_deg[v] >= r + 1]

    target_sums: dict[int, Fraction] = {}
    if verify_invariants:
        target_sums = {
            v: sum((z[e] for e in h_graph.incident_edges(v)), Fraction(0))
            for v in constrained
        }

    steps: list[TraceStep] = []
    while constrained:
        if verify_invariants:
            _check_conservation(h_graph, x, h, constrained, target_sums)
        s = len(constrained)
        frac_list = sorted(h)
        if len(frac_list) <= s:
            raise InvariantBreach(
                "constrained incidence system must have more columns than rows",
                rows=s,
                cols=len(frac_list),
            )
        cols = frac_list[: s + 1]
        col_index = {e: j for j, e in enumerate(cols)}
        rows_int = [[0] * len(cols) for _ in range(s)]
        for i, v in enumerate(constrained):
            for e in h_graph.incident_edges(v):
                j = col_index.get(e)
                if j is not None:
                    rows_int[i][j] = 1
        d = _kernel_int(rows_int, len(cols))
        support = [(cols[j], d[j]) for j in range(len(cols)) if d[j]]
        t_star, hits = step_to_boundary(
            [h[e] for e, _ in support], [de for _, de in support]
        )
        hit_set = set(hits)
        fixed_now = []
        for idx, (e, de) in enumerate(support):
            new = h[e] + t_star * de
            if idx in hit_set:
                x[e] = new
                del h[e]
                fixed_now.append(e)
                for v in h_graph.edges[e]:
                    frac_deg[v] -= 1
            else:
                h[e] = new
        steps.append(TraceStep(s, len(frac_list), t_star, tuple(fixed_now)))
        constrained = [v for v in constrained if frac_deg[v] >= r + 1]

    if h:
        state = RoundingState(
            frac_edges=tuple(sorted(h)),
            fixed={e: int(x[e]) for e in range(m) if x[e] is not None},
            h=dict(h),
            constrained=(),
        )
        for e, val in finalize_low_degree(state, h_graph).items():
            x[e] = val

    result = Weighting(x)
    if verify_invariants:
        _check_discrepancy(h_graph, z, result, r)
    return result, RoundingTrace(tuple(steps))


def _check_conservation(h_graph, x, h, constrained, target_sums):
    for v in constrained:
        total = Fraction(0)
        for e in h_graph.incident_edges(v):
            total += h[e] if e in h else x[e]
        if total != target_sums[v]:
            raise InvariantBreach(
                "conservation failed at a constrained vertex",
                vertex=v,
                observed=total,
                expected=target_sums[v],
            )
    for e, val in h.items():
        if not 0 < val < 1:
            raise InvariantBreach("fractional value left (0, 1)", edge=e, value=val)


def _check_discrepancy(h_graph, z, x, r):
    for v in range(h_graph.n_vertices):
        zs = sum((z[e] for e in h_graph.incident_edges(v)), Fraction(0))
        xs = sum((x[e] for e in h_graph.incident_edges(v)), Fraction(0))
        if not (zs - r < xs < zs + r):
            raise InvariantBreach(
                "discrepancy bound violated", vertex=v, z_sum=zs, x_sum=xs, rank=r
            )
