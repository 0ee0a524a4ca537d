"""Iterative colour-class extraction for 1/k-majority colourings.

A hypergraph with minimum degree delta >= 2 * rank * k^2 admits a
(k+1)-edge-colouring in which every vertex sees each colour at most
floor(d(v)/k) times. The construction peels off k classes, one per
round: round i places the constant weight alpha_i on every remaining
edge and rounds it to 0/1; the edges rounded to 1 form colour i and are
removed. Whatever survives all k rounds is colour k+1.

The alpha_i are tuned so the rounding discrepancy (strictly below the
rank, per round, at every vertex) keeps two exact bounds alive for every
vertex v with original degree d(v) = B * delta:

  class bound      d_i(v)         <= B * delta / k
  remaining bound  d_rem_i(v)     <= B * (delta - i * (delta/k - 2r))

At i = k the remaining bound collapses to 2rBk <= B * delta / k, so the
residual class obeys the same per-colour cap as the extracted ones.
Both bounds are asserted after every round; a breach means the rounding
step drifted off its guarantee and is reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantBreach, PreconditionError
from .hypercore import Colouring, Hypergraph, Weighting
from .rounder import round_weights

__all__ = [
    "PartitionState",
    "AlphaSchedule",
    "alpha",
    "alpha_schedule",
    "check_class_bounds",
    "partition_rounds",
    "colour_partition",
]


@dataclass(frozen=True)
class PartitionState:
    """Snapshot of the peeling process.

    remaining holds the edges not yet coloured; classes holds the colour
    classes extracted so far, in extraction order. delta and r are the
    minimum degree and rank of the original input and never change.
    """

    remaining: frozenset[int]
    classes: tuple[tuple[int, ...], ...]
    delta: int
    k: int
    r: int


@dataclass(frozen=True)
class AlphaSchedule:
    """The k per-round weights, exact rationals strictly inside (0, 1)."""

    alphas: tuple[Fraction, ...]


def alpha(i: int, delta: int, k: int, r: int) -> Fraction:
    """Weight used in round i:

        alpha_i = (delta/k - r) / (delta - (i-1) * (delta/k - 2r))

    Requires 1 <= i <= k and delta >= 2 * r * k^2, which makes the value
    land strictly inside (0, 1).
    """
    if not 1 <= i <= k:
        raise PreconditionError(f"round index {i} outside 1..{k}")
    if delta < 2 * r * k * k:
        raise PreconditionError(
            f"min degree {delta} below the required 2*r*k^2 = {2 * r * k * k}"
            f" (r={r}, k={k})"
        )
    num = Fraction(delta, k) - r
    den = delta - (i - 1) * (Fraction(delta, k) - 2 * r)
    return num / den


def alpha_schedule(delta: int, k: int, r: int) -> AlphaSchedule:
    """All k round weights for the given parameters."""
    alphas = tuple(alpha(i, delta, k, r) for i in range(1, k + 1))
    for i, a in enumerate(alphas, start=1):
        if not 0 < a < 1:
            raise InvariantBreach(
                "round weight escaped (0, 1)", i=i, alpha=a, delta=delta, k=k, r=r
            )
    return AlphaSchedule(alphas)


def check_class_bounds(
    h_graph: Hypergraph,
    state: PartitionState,
    i: int,
    class_edges: tuple[int, ...],
) -> None:
    """Assert the round-i degree bounds at every vertex, exactly.

    With B = d(v)/delta: the freshly extracted class may meet v at most
    B*delta/k times, and the remaining edges at most
    B*(delta - i*(delta/k - 2r)) times. These are the induction
    invariants of the peeling argument; a breach is a rounder bug, not a
    property of the input.
    """
    delta, k, r = state.delta, state.k, state.r
    class_deg = [0] * h_graph.n_vertices
    for e in class_edges:
        for v in h_graph.edges[e]:
            class_deg[v] += 1
    rem_deg = [0] * h_graph.n_vertices
    for e in state.remaining:
        for v in h_graph.edges[e]:
            rem_deg[v] += 1
    rem_factor = delta - i * (Fraction(delta, k) - 2 * r)
    for v in range(h_graph.n_vertices):
        b = Fraction(h_graph.degree(v), delta)
        class_bound = b * Fraction(delta, k)
        if class_deg[v] > class_bound:
            raise InvariantBreach(
                "colour class degree exceeded its cap",
                v=v,
                i=i,
                observed=class_deg[v],
                bound=class_bound,
            )
        rem_bound = b * rem_factor
        if rem_deg[v] > rem_bound:
            raise InvariantBreach(
                "remaining degree exceeded its cap",
                v=v,
                i=i,
                observed=rem_deg[v],
                bound=rem_bound,
            )


def partition_rounds(h_graph: Hypergraph, k: int) -> tuple[PartitionState, AlphaSchedule]:
    """Run the k extraction rounds and return the final state.

    state.classes has k+1 entries, the last being the residual class.
    Raises a precondition error when k < 2 or the minimum degree is below
    2 * rank * k^2; the message reports all three parameters and the bound.
    """
    if k < 2:
        raise PreconditionError(f"k must be at least 2, got {k}")
    m = len(h_graph.edges)
    r = h_graph.rank()
    if m == 0:
        return (
            PartitionState(frozenset(), ((),) * (k + 1), 0, k, 0),
            AlphaSchedule(()),
        )
    delta = h_graph.min_degree()
    bound = 2 * r * k * k
    if delta < bound:
        raise PreconditionError(
            f"min degree {delta} with rank {r} and k {k} requires at least {bound}"
        )
    schedule = alpha_schedule(delta, k, r)
    remaining: set[int] = set(range(m))
    classes: list[tuple[int, ...]] = []
    zero = Fraction(0)
    for i in range(1, k + 1):
        a = schedule.alphas[i - 1]
        z = Weighting([a if e in remaining else zero for e in range(m)])
        x, _ = round_weights(h_graph, z)
        class_i = tuple(sorted(e for e in remaining if x[e] == 1))
        remaining.difference_update(class_i)
        classes.append(class_i)
        state = PartitionState(frozenset(remaining), tuple(classes), delta, k, r)
        check_class_bounds(h_graph, state, i, class_i)
    classes.append(tuple(sorted(remaining)))
    return (
        PartitionState(frozenset(), tuple(classes), delta, k, r),
        schedule,
    )


def colour_partition(h_graph: Hypergraph, k: int) -> Colouring:
    """(k+1)-colouring in which every vertex sees each colour at most
    floor(d(v)/k) times, built by the peeling rounds.
    """
    state, _ = partition_rounds(h_graph, k)
    colours = [0] * len(h_graph.edges)
    for ci, cls in enumerate(state.classes, start=1):
        for e in cls:
            colours[e] = ci
    return Colouring(colours, k + 1)
