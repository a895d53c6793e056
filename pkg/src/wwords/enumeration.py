"""Direct enumeration of coloured partitions.

This engine builds generating functions the slow, obviously-correct way: a
depth-first walk over every valid partition, largest part first, checking the
gap condition between consecutive parts.  It shares no recursion logic with
the recurrence engine, so agreement between the two is a real cross-check.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

from .algebra import Monomial, Polynomial, TruncatedSeries
from .systems import ColouredPart, ColouredSystem, SystemSpecError

DEFAULT_MAX_NODES = 10_000_000
_MAX_NODES_ENV = "WWORDS_MAX_NODES"


class EnumerationLimitError(RuntimeError):
    """The partition walk exceeded its node budget."""


def _node_budget(max_nodes: int | None) -> int:
    if max_nodes is not None:
        return max_nodes
    env = os.environ.get(_MAX_NODES_ENV)
    if env:
        return int(env)
    return DEFAULT_MAX_NODES


def _coerce_part(part) -> ColouredPart:
    if isinstance(part, ColouredPart):
        return part
    return ColouredPart(*part)


def partition_weight(sys: ColouredSystem,
                     parts: Iterable[ColouredPart]) -> tuple[Monomial, int]:
    """(product of part weights, total size) for a partition."""
    weight = Monomial.one()
    total = 0
    for p in parts:
        p = _coerce_part(p)
        weight = weight * sys.part_weight(p)
        total += p.size
    return weight, total


def is_valid_partition(sys: ColouredSystem,
                       parts: Sequence) -> tuple[bool, str]:
    """Check a largest-first sequence of parts against the system's rules.

    Returns (True, "") or (False, reason) naming the first violation.
    """
    coerced = [_coerce_part(p) for p in parts]
    for i, p in enumerate(coerced):
        reason = sys.part_validity(p)
        if reason is not None:
            return False, f"part {i + 1} ({p}): {reason}"
    for i in range(len(coerced) - 1):
        upper, lower = coerced[i], coerced[i + 1]
        need = sys.min_gap(upper, lower)
        if upper.size - lower.size < need:
            return False, (
                f"parts {i + 1} and {i + 2} ({upper} over {lower}): "
                f"difference {upper.size - lower.size} is below the "
                f"required {need}")
    return True, ""


def _prepare(sys: ColouredSystem, qmax: int, degmax: int | None):
    if qmax < 0:
        raise ValueError("qmax must be >= 0")
    if sys.has_zero_parts:
        if degmax is None:
            raise SystemSpecError(
                "system admits size-0 parts: a degree bound (degmax) is "
                "needed for the walk to terminate")
        for c in sys.colours:
            if c.domain.contains(0) and c.weight.degree == 0:
                raise SystemSpecError(
                    f"colour {c.label!r} has size-0 parts of weight 1: "
                    "enumeration cannot terminate")
    parts = sys.parts_up_to(qmax)
    if degmax is not None:
        parts = [p for p in parts if sys.part_weight(p).degree <= degmax]
    below: dict[ColouredPart, list[ColouredPart]] = {}
    for p in parts:
        cands = []
        for p2 in parts:
            if p2.size <= p.size - sys.min_gap(p, p2):
                cands.append(p2)
        below[p] = cands
    return parts, below


def _walk(sys: ColouredSystem, qmax: int, degmax: int | None,
          max_nodes: int | None, visit):
    """Run the DFS, calling visit(chain, weight, total) at every partition.

    The empty partition is visited first with weight 1 and total 0.
    """
    parts, below = _prepare(sys, qmax, degmax)
    budget = _node_budget(max_nodes)
    count = 0
    weights = {p: sys.part_weight(p) for p in parts}
    degs = {p: w.degree for p, w in weights.items()}

    visit((), Monomial.one(), 0)

    # iterative DFS; stack holds (part, remaining chain iterator) frames
    chain: list[ColouredPart] = []

    def rec(p: ColouredPart, weight: Monomial, total: int):
        nonlocal count
        count += 1
        if count > budget:
            raise EnumerationLimitError(
                f"enumeration exceeded {budget} partitions; raise the limit "
                f"via the {_MAX_NODES_ENV} environment variable or max_nodes")
        chain.append(p)
        visit(tuple(chain), weight, total)
        for p2 in below[p]:
            t2 = total + p2.size
            if t2 > qmax:
                continue
            w2deg = weight.degree + degs[p2]
            if degmax is not None and w2deg > degmax:
                continue
            rec(p2, weight * weights[p2], t2)
        chain.pop()

    for p in parts:
        if p.size <= qmax and (degmax is None or degs[p] <= degmax):
            rec(p, weights[p], p.size)


def enumerate_series(sys: ColouredSystem, qmax: int, degmax: int | None = None,
                     max_nodes: int | None = None) -> TruncatedSeries:
    """Generating function sum(weight * q^size) over all valid partitions,
    truncated beyond q^qmax, by direct enumeration.

    Weight degrees are bounded by degmax *before* erased variables are set
    to 1; erasure happens on the final series.
    """
    buckets: list[dict[Monomial, int]] = [dict() for _ in range(qmax + 1)]

    def visit(chain, weight, total):
        buckets[total][weight] = buckets[total].get(weight, 0) + 1

    _walk(sys, qmax, degmax, max_nodes, visit)
    coeffs = [Polynomial(b) for b in buckets]
    series = TruncatedSeries(qmax, coeffs, degmax=degmax)
    if sys.erased_vars:
        series = series.specialize({v: 1 for v in sys.erased_vars})
    return series


def list_partitions(sys: ColouredSystem, n: int, degmax: int | None = None,
                    max_nodes: int | None = None) -> list[tuple[ColouredPart, ...]]:
    """All valid partitions of total size exactly n, each listed largest part
    first, ordered lexicographically by their rank sequences."""
    found: list[tuple[ColouredPart, ...]] = []

    def visit(chain, weight, total):
        if total == n:
            found.append(chain)

    _walk(sys, n, degmax, max_nodes, visit)
    found.sort(key=lambda ch: [sys.part_key(p) for p in ch])
    return found


def count_partitions(sys: ColouredSystem, qmax: int, degmax: int | None = None,
                     max_nodes: int | None = None) -> list[int]:
    """Number of valid partitions of each 0..qmax (weights ignored)."""
    counts = [0] * (qmax + 1)

    def visit(chain, weight, total):
        counts[total] += 1

    _walk(sys, qmax, degmax, max_nodes, visit)
    return counts
