"""Discovery tools: periodic-product recognition and colour-relation search.

Two instruments for exploring a coloured system whose generating function is
not yet understood:

* :func:`recognize_periodic_product` inspects the Euler factorization of a
  series and decides whether the factor exponents settle into a repeating
  pattern ``table[n] == table[n + m]`` past a short initial segment.  When
  they do, it packages the pattern as a :class:`~wwords.algebra.ProductSpec`
  and re-expands it; a pattern is returned only if the re-expansion
  reproduces the input exactly, so a recognized pattern is always sound
  (recognition may fail, but it may not lie).

* :func:`search_relations` hunts for monomial substitutions of a system's
  free colour variables that turn its generating function into a periodic
  product.  Each free variable ranges over monomials in a chosen set of
  primary variables with bounded exponents; candidates are scored by whether
  the substituted series is product-like and by how many distinct Euler
  factor families one period carries.

The search factorizes the unsubstituted series once and relabels the factor
table per candidate: substituting variables by monomials maps each Euler
factor ``(1 - mono * q^n)`` to another Euler factor at the same ``q`` power,
so the table of the substituted series is the relabelled table with
colliding entries summed.  This makes the per-candidate cost a table scan
rather than a fresh enumeration and factorization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .algebra import (
    Monomial,
    ProductFactor,
    ProductSpec,
    SubstitutionMap,
    TruncatedSeries,
    euler_factorize,
    product_expand,
    substitute,
)
from .enumeration import enumerate_series
from .systems import ColouredSystem

__all__ = [
    "DiscoveryError",
    "PeriodicPattern",
    "RelationCandidate",
    "recognize_periodic_product",
    "search_relations",
]

#: Hard ceiling on the number of substitutions a relation search may visit.
SEARCH_SPACE_LIMIT = 1_000_000


class DiscoveryError(ValueError):
    """Raised for invalid discovery requests (bad window, oversized search)."""


# ---------------------------------------------------------------------------
# Periodic-product recognition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicPattern:
    """A verified periodic Euler-factor pattern for a series.

    ``period`` is the minimal period ``m`` of the factor table, ``initial``
    the minimal number ``s <= m`` of leading positions excluded from the
    pattern, and ``spec`` an infinite-product specification whose expansion
    reproduces the recognized series on its whole window.
    ``factors_per_period`` counts the distinct factor families inside one
    period (positions ``initial + 1 .. initial + period``).
    """

    period: int
    initial: int
    spec: ProductSpec
    factors_per_period: int

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "initial": self.initial,
            "factors_per_period": self.factors_per_period,
            "product": self.spec.to_json(),
        }


def _exponent_rows(table, qmax: int) -> list[dict]:
    """Organize euler_factorize output into per-degree exponent dictionaries."""
    rows: list[dict] = [dict() for _ in range(qmax + 1)]
    for mono, n, e in table:
        if e and n <= qmax:
            merged = rows[n].get(mono, 0) + e
            if merged:
                rows[n][mono] = merged
            else:
                rows[n].pop(mono, None)
    return rows


def _minimal_period(rows: Sequence[Mapping], qmax: int) -> tuple[int, int] | None:
    """Smallest (period, initial) with rows[n] == rows[n + period] beyond initial.

    Periods up to ``qmax // 3`` are considered, so every accepted pattern is
    witnessed by at least two full repetitions inside the window.  For each
    period the smallest admissible initial segment (``0 <= initial <= period``)
    is chosen.
    """
    for m in range(1, qmax // 3 + 1):
        for s in range(0, m + 1):
            if all(rows[n] == rows[n + m] for n in range(s + 1, qmax - m + 1)):
                return m, s
    return None


def _pattern_factors(rows: Sequence[Mapping[Monomial, int]],
                     m: int, s: int) -> list[ProductFactor]:
    """Factor list realizing the given periodic rows.

    Positions ``s + 1 .. s + m`` become one factor family each per monomial,
    repeating with step ``m``.  A position ``n <= s`` outside the pattern is
    realized as a quotient of two families offset by one period, which leaves
    a single net factor at ``n``.
    """
    factors: list[ProductFactor] = []
    for n in range(1, s + 1):
        for mono in sorted(rows[n]):
            e = rows[n][mono]
            factors.append(ProductFactor(1, mono, n, m, e))
            factors.append(ProductFactor(1, mono, n + m, m, -e))
    for p in range(s + 1, s + m + 1):
        for mono in sorted(rows[p]):
            factors.append(ProductFactor(1, mono, p, m, rows[p][mono]))
    return factors


def recognize_periodic_product(f: TruncatedSeries,
                               qmax: int | None = None) -> PeriodicPattern | None:
    """Recognize a periodic infinite-product shape in a series.

    The series is Euler-factorized (its constant term must be 1) and the
    factor exponents at each ``q`` power are tested for periodicity.  On
    success the periodic pattern is re-expanded and compared against the
    input on the whole window; ``None`` is returned when no period is found
    *or* when the re-expansion check fails, so any returned pattern is a
    proven product representation up to the truncation order.
    """
    if qmax is None:
        qmax = f.qmax
    if qmax < 0 or qmax > f.qmax:
        raise DiscoveryError(
            f"recognition window 0..{qmax} is outside the series window 0..{f.qmax}")
    f = f.truncate(qmax)
    rows = _exponent_rows(euler_factorize(f), qmax)
    if all(not row for row in rows):
        return PeriodicPattern(1, 0, ProductSpec([]), 0)
    found = _minimal_period(rows, qmax)
    if found is None:
        return None
    m, s = found
    spec = ProductSpec(_pattern_factors(rows, m, s))
    if product_expand(spec, qmax, f.degmax) != f:
        return None
    nfactors = sum(len(rows[p]) for p in range(s + 1, s + m + 1))
    return PeriodicPattern(m, s, spec, nfactors)


# ---------------------------------------------------------------------------
# Colour-relation search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationCandidate:
    """One substitution of free colour variables, with its recognition result.

    ``substitution`` maps each free variable to a monomial in the primary
    variables (the empty monomial erases the colour).  ``pattern`` is the
    recognized periodic product of the substituted series when one exists.
    """

    substitution: tuple[tuple[str, Monomial], ...]
    product_like: bool
    pattern: PeriodicPattern | None

    @property
    def period(self) -> int | None:
        return self.pattern.period if self.pattern else None

    @property
    def factors_per_period(self) -> int | None:
        return self.pattern.factors_per_period if self.pattern else None

    def substitution_dict(self) -> dict[str, Monomial]:
        return dict(self.substitution)

    def score(self) -> tuple[bool, int | None]:
        """(product-like, distinct factor families per period)."""
        return self.product_like, self.factors_per_period

    def to_json(self) -> dict:
        data = {
            "substitution": {v: mono.to_json() for v, mono in self.substitution},
            "product_like": self.product_like,
            "period": self.period,
            "factors_per_period": self.factors_per_period,
        }
        if self.pattern is not None:
            data["pattern"] = self.pattern.to_json()
        return data


def _decompose_table(table, free_index: Mapping[str, int],
                     primary_index: Mapping[str, int]):
    """Split each table entry into static and substitution-dependent parts.

    Returns tuples ``(n, other, base, freeks, e)`` where ``other`` holds the
    variables untouched by the search, ``base`` is the exponent vector the
    monomial already carries on the primary variables, and ``freeks`` lists
    ``(free-variable position, exponent)`` pairs to be relabelled.
    """
    nprims = len(primary_index)
    out = []
    for mono, n, e in table:
        base = [0] * nprims
        freeks = []
        other = []
        for v, k in mono.items:
            if v in free_index:
                freeks.append((free_index[v], k))
            elif v in primary_index:
                base[primary_index[v]] = k
            else:
                other.append((v, k))
        out.append((n, tuple(other), tuple(base), tuple(freeks), e))
    return out


def _relabel_rows(entries, images: Sequence[Sequence[int]], qmax: int) -> list[dict]:
    """Per-degree exponent rows after substituting free variables.

    Row keys are ``(other, *primary exponents)`` tuples; entries that collide
    after substitution have their exponents summed, and zero sums drop out.
    """
    rows: list[dict] = [dict() for _ in range(qmax + 1)]
    for n, other, base, freeks, e in entries:
        acc = list(base)
        for i, k in freeks:
            vec = images[i]
            for j, vj in enumerate(vec):
                acc[j] += k * vj
        key = (other, *acc)
        row = rows[n]
        merged = row.get(key, 0) + e
        if merged:
            row[key] = merged
        else:
            del row[key]
    return rows


def _survives(rows: Sequence[Mapping], pairs, upto: int) -> list[tuple[int, int]]:
    """The (period, initial) pairs consistent with rows on degrees 1..upto."""
    return [(m, s) for m, s in pairs
            if all(rows[n] == rows[n + m] for n in range(s + 1, upto - m + 1))]


def _key_monomial(key, primaries: Sequence[str]) -> Monomial:
    other, *exps = key
    parts = dict(other)
    for name, k in zip(primaries, exps):
        if k:
            parts[name] = k
    return Monomial.from_dict(parts)


def search_relations(system: ColouredSystem,
                     primaries: Sequence[str],
                     qmax: int,
                     max_exponent: int = 2,
                     max_nodes: int | None = None) -> list[RelationCandidate]:
    """Search substitutions of free colours that make the series a product.

    Every colour variable of ``system`` not listed in ``primaries`` is free;
    each free variable independently ranges over monomials
    ``prod(primary ** e)`` with ``0 <= e <= max_exponent``.  Primaries are
    never substituted.  The system's series is enumerated once to order
    ``qmax``; each candidate substitution is tested for a periodic Euler
    pattern (period at most ``qmax // 3``) and product-like candidates carry
    a verified :class:`PeriodicPattern`.

    Candidates are returned sorted best first: product-like before not,
    fewer factor families per period before more, and enumeration order
    (free variables sorted, exponent vectors in lexicographic order) breaks
    ties, so the result is deterministic.
    """
    if qmax < 1:
        raise DiscoveryError("search needs a positive truncation order")
    if max_exponent < 0:
        raise DiscoveryError("max_exponent must be non-negative")
    prims = list(primaries)
    if not prims or len(set(prims)) != len(prims):
        raise DiscoveryError("primaries must be a non-empty list of distinct variables")
    free = sorted(set(system.variables()) - set(prims))

    per_var = (max_exponent + 1) ** len(prims)
    total = per_var ** len(free)
    if total > SEARCH_SPACE_LIMIT:
        raise DiscoveryError(
            f"search space of {total} substitutions exceeds {SEARCH_SPACE_LIMIT}; "
            "reduce max_exponent or the number of free colours")

    base = enumerate_series(system, qmax, max_nodes=max_nodes)
    if not free:
        pattern = recognize_periodic_product(base)
        return [RelationCandidate((), pattern is not None, pattern)]

    table = euler_factorize(base)
    free_index = {v: i for i, v in enumerate(free)}
    primary_index = {p: i for i, p in enumerate(prims)}
    entries = _decompose_table(table, free_index, primary_index)

    mmax = qmax // 3
    pairs = [(m, s) for m in range(1, mmax + 1) for s in range(0, m + 1)]
    # Smallest window on which no (period, initial) pair is vacuous: the
    # loosest pair (mmax, mmax) still gets checked at degree mmax + mmax + 1.
    window = min(qmax, 2 * mmax + 1)
    early = [t for t in entries if t[0] <= window]

    vecs = list(itertools.product(range(max_exponent + 1), repeat=len(prims)))
    image_monos = {vec: Monomial.from_dict({p: e for p, e in zip(prims, vec) if e})
                   for vec in vecs}

    def verified_pattern(rows, m: int, s: int, images) -> PeriodicPattern | None:
        mono_rows: list[dict] = [
            {_key_monomial(key, prims): e for key, e in row.items()}
            for row in rows
        ]
        spec = ProductSpec(_pattern_factors(mono_rows, m, s))
        mapping = {v: (image_monos[images[i]], 0) for v, i in free_index.items()}
        substituted = substitute(base, SubstitutionMap(1, mapping), qmax, base.degmax)
        if product_expand(spec, qmax, base.degmax) != substituted:
            return None
        nfactors = sum(len(mono_rows[p]) for p in range(s + 1, s + m + 1))
        return PeriodicPattern(m, s, spec, nfactors)

    def candidates() -> Iterator[RelationCandidate]:
        for images in itertools.product(vecs, repeat=len(free)):
            alive = _survives(_relabel_rows(early, images, window), pairs, window)
            pattern = None
            if alive:
                rows = _relabel_rows(entries, images, qmax)
                for m, s in alive:  # (m, s) ascending: first full match is minimal
                    if all(rows[n] == rows[n + m]
                           for n in range(s + 1, qmax - m + 1)):
                        pattern = verified_pattern(rows, m, s, images)
                        break
            sub = tuple((v, image_monos[images[i]]) for i, v in enumerate(free))
            yield RelationCandidate(sub, pattern is not None, pattern)

    found = list(candidates())
    # Stable sort keeps enumeration order among equal scores.
    found.sort(key=lambda c: (not c.product_like,
                              c.factors_per_period if c.product_like else 0))
    return found
