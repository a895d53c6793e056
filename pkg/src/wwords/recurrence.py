"""Recurrence-based computation of generating functions, and equation checks.

The engine computes, for every coloured part p in rank order, the series
E_p = generating function of valid partitions whose largest part is exactly
p, via

    E_p = weight(p) * q^size(p) * (1 + sum of E_p' over parts p' admissible
          directly below p),

closing self-admissible parts (min_gap(p, p) <= 0) with a geometric series.
G_p is the cumulative sum 1 + sum of E at ranks <= rank(p); the full
generating function is the limit over everything with size <= qmax.  A
mirrored smallest-part recursion covers systems whose natural indexing is by
smallest part (those with size-0 parts).

The module also models the recurrences / initial conditions / functional
equations / q-difference equations such systems satisfy, as EquationSpec
objects checkable to any truncation order.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    Monomial,
    Polynomial,
    SubstitutionMap,
    TruncatedSeries,
    binomial_factor,
    substitute,
)
from .systems import (
    ColouredPart,
    ColouredSystem,
    MatrixGap,
    SystemSpecError,
    build_preset,
)


class RecurrenceError(ValueError):
    """The recurrence engine hit an inconsistency or unusable input."""


class EquationRangeError(RecurrenceError):
    """An equation was evaluated at a k outside its regular range."""


# ---------------------------------------------------------------------------
# raw series helpers (list of {Monomial: int} buckets, index = q exponent)
# ---------------------------------------------------------------------------


def _raw_zero(qmax: int) -> list[dict]:
    return [dict() for _ in range(qmax + 1)]


def _raw_add_into(acc: list[dict], other: list[dict]) -> None:
    for bucket, extra in zip(acc, other):
        for mono, c in extra.items():
            v = bucket.get(mono, 0) + c
            if v:
                bucket[mono] = v
            else:
                del bucket[mono]


def _raw_shift_mul(src: list[dict], mono: Monomial, s: int, qmax: int,
                   degmax: int | None) -> list[dict]:
    """src * mono * q^s, truncated at qmax (and at total degree degmax)."""
    out = _raw_zero(qmax)
    mdeg = mono.degree
    for n in range(qmax + 1 - s):
        bucket = src[n]
        if not bucket:
            continue
        tgt = out[n + s]
        for m, c in bucket.items():
            if degmax is not None and m.degree + mdeg > degmax:
                continue
            m2 = m * mono
            v = tgt.get(m2, 0) + c
            if v:
                tgt[m2] = v
            else:
                del tgt[m2]
    return out


def _raw_is_zero(src: list[dict]) -> bool:
    return all(not bucket for bucket in src)


def _raw_geometric(src: list[dict], w: Monomial, s: int, qmax: int,
                   degmax: int | None) -> list[dict]:
    """Solve E = w*q^s * (1 + src + E) for E.

    For s >= 1 a single ascending pass over q-exponents suffices: bucket n of
    E only needs buckets n-s of src and E.  For s = 0 the fixpoint is graded
    by colour degree instead (w then has positive degree, or the caller
    rejected the system), so repeated multiplication terminates.
    """
    wdeg = w.degree
    out = _raw_zero(qmax)
    if s == 0:
        base = [dict(b) for b in src]
        base[0][Monomial.one()] = base[0].get(Monomial.one(), 0) + 1
        term = _raw_shift_mul(base, w, 0, qmax, degmax)
        guard = 0
        while not _raw_is_zero(term):
            _raw_add_into(out, term)
            term = _raw_shift_mul(term, w, 0, qmax, degmax)
            guard += 1
            if guard > (degmax or 0) + 2:
                raise RecurrenceError(
                    "geometric closure over size-0 parts does not terminate")
        return out
    if s > qmax:
        return out
    if degmax is None or wdeg <= degmax:
        out[s][w] = 1
    for n in range(s, qmax + 1):
        tgt = out[n]
        for bucket in (src[n - s], out[n - s]):
            for m, c in bucket.items():
                if degmax is not None and m.degree + wdeg > degmax:
                    continue
                m2 = m * w
                v = tgt.get(m2, 0) + c
                if v:
                    tgt[m2] = v
                else:
                    del tgt[m2]
    return out


def _raw_one(qmax: int) -> list[dict]:
    out = _raw_zero(qmax)
    out[0][Monomial.one()] = 1
    return out


def _raw_to_series(src: list[dict], qmax: int,
                   degmax: int | None) -> TruncatedSeries:
    return TruncatedSeries(qmax, [Polynomial(dict(b)) for b in src],
                           degmax=degmax)


# ---------------------------------------------------------------------------
# gap plumbing: lanes (row identities) and per-lane gap values
# ---------------------------------------------------------------------------


def _lane_of(sys: ColouredSystem, part: ColouredPart) -> str:
    """Upper parts with the same lane impose identical gaps on every lower
    part; within a lane, sizes increase with rank."""
    if isinstance(sys.gap, MatrixGap):
        return sys.gap.row_class(part)
    return part.colour


def _lane_gap(sys: ColouredSystem, lane: str, lower_colour: str,
              lower_over: bool) -> int:
    gap = sys.gap
    if isinstance(gap, MatrixGap):
        try:
            g = gap.rows[lane][lower_colour]
        except KeyError:
            raise SystemSpecError(
                f"gap matrix has no entry for row {lane!r}, "
                f"column {lower_colour!r}")
        if gap.overline_extra and lower_over:
            g += 1
        return g
    # formula rules: the lane is the upper colour; size plays no role
    upper = ColouredPart(0, lane, False)
    lower = ColouredPart(0, lower_colour, lower_over)
    return gap.min_gap(sys, upper, lower)


def _check_termination(sys: ColouredSystem, degmax: int | None) -> None:
    if sys.has_zero_parts:
        if degmax is None:
            raise SystemSpecError(
                "system admits size-0 parts: a degree bound (degmax) is "
                "needed for the recursion to terminate")
        for c in sys.colours:
            if c.domain.contains(0) and c.weight.degree == 0:
                raise SystemSpecError(
                    f"colour {c.label!r} has size-0 parts of weight 1: "
                    "the recursion cannot terminate")


# ---------------------------------------------------------------------------
# the recurrence state
# ---------------------------------------------------------------------------


class RecurrenceState:
    """E_p / G_p tables for a system, built in rank order.

    direction "largest" builds largest-part tables (the default for systems
    with positive minimum size); "smallest" builds the mirrored smallest-part
    recursion (default when size-0 parts exist).  G/E lookups are only
    meaningful for the largest-part direction.
    """

    def __init__(self, sys: ColouredSystem, qmax: int,
                 degmax: int | None = None, direction: str = "auto"):
        if qmax < 0:
            raise ValueError("qmax must be >= 0")
        if direction == "auto":
            direction = "smallest" if sys.min_size == 0 else "largest"
        if direction not in ("largest", "smallest"):
            raise ValueError(f"unknown direction {direction!r}")
        _check_termination(sys, degmax)
        self.sys = sys
        self.qmax = qmax
        self.degmax = degmax
        self.direction = direction
        self._parts: list[ColouredPart] = []
        self._E: list[list[dict]] = []
        self._index: dict[ColouredPart, int] = {}
        self._total: list[dict] = _raw_one(qmax)
        self._g_cache: dict[tuple[int, int], TruncatedSeries] = {}
        self._series_cache: dict[int, TruncatedSeries] = {}
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self) -> None:
        sys, qmax, degmax = self.sys, self.qmax, self.degmax
        parts = sys.parts_up_to(qmax)
        if degmax is not None:
            parts = [p for p in parts if sys.part_weight(p).degree <= degmax]
        mirror = self.direction == "smallest"
        if mirror:
            parts = list(reversed(parts))

        # Largest-part direction: running sums are keyed by (lane of the new
        # largest part, (colour, over) group of the parts admissible below
        # it); within a group, sizes increase with processing order, so each
        # sum advances a pointer over that group's computed parts.
        #
        # Smallest-part mirror: sums are keyed by (lane of the parts
        # admissible above the new smallest part, its own (colour, over)
        # group); within a lane, sizes decrease with processing order.
        group_sizes: dict[tuple[str, bool], list[int]] = {}
        lane_sizes: dict[str, list[int]] = {}
        for p in parts:
            group_sizes.setdefault((p.colour, p.over), []).append(p.size)
            lane_sizes.setdefault(_lane_of(sys, p), []).append(p.size)
        for key in group_sizes:
            group_sizes[key] = sorted(group_sizes[key])
        for key in lane_sizes:
            lane_sizes[key] = sorted(lane_sizes[key])

        groups = sorted(group_sizes)
        lanes = sorted(lane_sizes)
        # computed E indices, in processing order, per group / per lane
        computed_grp: dict[tuple[str, bool], list[int]] = {
            g: [] for g in groups}
        computed_lane: dict[str, list[int]] = {l: [] for l in lanes}
        # every (lane, group) pair advances its own monotone pointer, but all
        # pairs sharing an upper lane (largest) / a lower group (mirror) add
        # into one shared accumulator, so each E is merged exactly once
        ptrs: dict[tuple[str, tuple[str, bool]], int] = {
            (lane, grp): 0 for lane in lanes for grp in groups}
        shared: dict = ({lane: _raw_zero(qmax) for lane in lanes}
                        if not mirror else
                        {grp: _raw_zero(qmax) for grp in groups})

        for p in parts:
            grp_p = (p.colour, p.over)
            lane_p = _lane_of(sys, p)
            size_p = p.size
            self_gap = _lane_gap(sys, lane_p, p.colour, p.over)
            if not mirror:
                acc = shared[lane_p]
                for grp in groups:
                    g = _lane_gap(sys, lane_p, grp[0], grp[1])
                    self._advance_largest(acc, ptrs, lane_p, grp,
                                          computed_grp[grp], group_sizes[grp],
                                          size_p - g, p)
            else:
                acc = shared[grp_p]
                for lane in lanes:
                    g = _lane_gap(sys, lane, p.colour, p.over)
                    self._advance_smallest(acc, ptrs, lane, grp_p,
                                           computed_lane[lane],
                                           lane_sizes[lane], size_p + g, p,
                                           lane_p)

            w = sys.part_weight(p)
            if self_gap <= 0:
                # p may sit directly next to itself: geometric closure
                E_p = _raw_geometric(acc, w, size_p, qmax, degmax)
            else:
                E_p = _raw_shift_mul(acc, w, size_p, qmax, degmax)
                if size_p <= qmax and (degmax is None or w.degree <= degmax):
                    bucket = E_p[size_p]  # the chain consisting of p alone
                    bucket[w] = bucket.get(w, 0) + 1

            idx = len(self._parts)
            self._index[p] = idx
            self._parts.append(p)
            self._E.append(E_p)
            computed_grp[grp_p].append(idx)
            computed_lane[lane_p].append(idx)
            _raw_add_into(self._total, E_p)

    def _advance_largest(self, acc, ptrs, lane, grp, comp, sizes, threshold,
                         current) -> None:
        key = (lane, grp)
        ptr = ptrs[key]
        while ptr < len(comp):
            idx = comp[ptr]
            if self._parts[idx].size > threshold:
                break
            _raw_add_into(acc, self._E[idx])
            ptr += 1
        ptrs[key] = ptr
        need = bisect_right(sizes, threshold)
        if grp == (current.colour, current.over) and current.size <= threshold:
            need -= 1  # the self-loop is handled by the geometric closure
        if need > ptr:
            missing = ColouredPart(sizes[ptr], grp[0], grp[1])
            raise RecurrenceError(
                f"rank inconsistency: E for part {current} needs E for "
                f"{missing}, which has a higher rank; the gap rule and the "
                "part order are incompatible")

    def _advance_smallest(self, acc, ptrs, lane, grp, comp, sizes, threshold,
                          current, current_lane) -> None:
        key = (lane, grp)
        ptr = ptrs[key]
        while ptr < len(comp):
            idx = comp[ptr]
            if self._parts[idx].size < threshold:
                break
            _raw_add_into(acc, self._E[idx])
            ptr += 1
        ptrs[key] = ptr
        need = len(sizes) - bisect_left(sizes, threshold)
        if lane == current_lane and current.size >= threshold:
            need -= 1  # the self-loop is handled by the geometric closure
        if need > ptr:
            # parts in a lane are processed in descending size order
            missing_size = sorted(sizes, reverse=True)[ptr]
            raise RecurrenceError(
                f"rank inconsistency: E for part {current} needs E for the "
                f"size-{missing_size} part of lane {lane!r}, which has a "
                "lower rank; the gap rule and the part order are incompatible")

    # -- lookups --------------------------------------------------------------

    def _finish(self, raw: list[dict]) -> TruncatedSeries:
        series = _raw_to_series(raw, self.qmax, self.degmax)
        if self.sys.erased_vars:
            series = series.specialize({v: 1 for v in self.sys.erased_vars})
        return series

    def total_series(self) -> TruncatedSeries:
        return self._finish(self._total)

    def parts(self) -> list[ColouredPart]:
        return list(self._parts)

    def E(self, size: int, colour: str, over: bool = False) -> TruncatedSeries:
        """Series for partitions whose largest part is exactly size_colour."""
        self._require_largest()
        if size < 0 or (size == 0 and not self.sys.has_zero_parts):
            return TruncatedSeries.zero(self.qmax, self.degmax)
        p = ColouredPart(size, colour, over)
        idx = self._index.get(p)
        if idx is None:
            self.sys.colour(colour)  # unknown colour -> error
            return TruncatedSeries.zero(self.qmax, self.degmax)
        cached = self._series_cache.get(idx)
        if cached is None:
            cached = self._finish(self._E[idx])
            self._series_cache[idx] = cached
        return cached

    def G(self, size: int, colour: str) -> TruncatedSeries:
        """Series for partitions with every part of rank <= rank(size_colour).

        G at size 0 is 1 and at negative sizes 0 for systems with positive
        minimum part size, matching the recurrences' initial conditions.
        """
        self._require_largest()
        if size < 0:
            return TruncatedSeries.zero(self.qmax, self.degmax)
        if size == 0 and not self.sys.has_zero_parts:
            return TruncatedSeries.one(self.qmax, self.degmax)
        self.sys.colour(colour)
        key = (self.sys.rank_rule.rank(ColouredPart(size, colour, False)), 1)
        cached = self._g_cache.get(key)
        if cached is None:
            raw = _raw_one(self.qmax)
            for idx, p in enumerate(self._parts):
                if self.sys.part_key(p) <= key:
                    _raw_add_into(raw, self._E[idx])
            cached = self._finish(raw)
            self._g_cache[key] = cached
        return cached

    def _require_largest(self) -> None:
        if self.direction != "largest":
            raise RecurrenceError(
                "G/E lookups need the largest-part direction; this state was "
                f"built with direction {self.direction!r}")


def dp_series(sys: ColouredSystem, qmax: int, degmax: int | None = None,
              direction: str = "auto") -> TruncatedSeries:
    """Full generating function up to q^qmax via the recurrence engine."""
    return RecurrenceState(sys, qmax, degmax, direction).total_series()


# ---------------------------------------------------------------------------
# equations
# ---------------------------------------------------------------------------


Affine = tuple[int, int]  # (alpha, beta) meaning alpha*k + beta


def _affine_eval(e: Affine, k: int) -> int:
    return e[0] * k + e[1]


def _affine_str(e: Affine, var: str = "k") -> str:
    alpha, beta = e
    if alpha == 0:
        return str(beta)
    head = {1: var, -1: f"-{var}"}.get(alpha, f"{alpha}{var}")
    if beta == 0:
        return head
    return f"{head}{beta:+d}"


@dataclass(frozen=True)
class EqTerm:
    """coeff * SERIES, where SERIES is G/E at an affine index, optionally with
    a substitution applied, or the constant 1 (kind "const").

    coeff = (sum of c * vars * q^(affine in k)) / product of (1 - q^(affine)).
    """

    kind: str                                  # "G" | "E" | "const"
    colour: str | None = None                  # may be "x" (family placeholder)
    size: Affine | None = None
    over: bool = False
    poly: tuple[tuple[int, tuple, Affine], ...] = ((1, (), (0, 0)),)
    den: tuple[Affine, ...] = ()
    sub: SubstitutionMap | None = None

    def __post_init__(self):
        if self.kind not in ("G", "E", "const"):
            raise RecurrenceError(f"unknown term kind {self.kind!r}")
        if self.kind != "const" and (self.colour is None or self.size is None):
            raise RecurrenceError(f"{self.kind} term needs colour and size")

    def coefficient_series(self, k: int, qmax: int) -> TruncatedSeries:
        out = TruncatedSeries.zero(qmax)
        for c, items, qexp in self.poly:
            e = _affine_eval(qexp, k)
            if e < 0:
                raise EquationRangeError(
                    f"coefficient exponent q^({_affine_str(qexp)}) is negative "
                    f"at k={k}; restrict the k range")
            if e <= qmax:
                out = out + TruncatedSeries.from_term(
                    qmax, e, Polynomial.term(Monomial(items), c))
        for dexp in self.den:
            e = _affine_eval(dexp, k)
            if e <= 0:
                raise EquationRangeError(
                    f"denominator 1 - q^({_affine_str(dexp)}) vanishes or is "
                    f"singular at k={k}; restrict the k range")
            out = out * binomial_factor(1, Monomial.one(), e, -1, qmax)
        return out

    def evaluate(self, state: RecurrenceState, k: int,
                 colour_binding: str | None) -> TruncatedSeries:
        qmax = state.qmax
        coeff = self.coefficient_series(k, qmax)
        if self.kind == "const":
            return coeff
        colour = self.colour
        if colour == "x":
            if colour_binding is None:
                raise RecurrenceError(
                    "term uses placeholder colour 'x' but the equation "
                    "declares no colour family")
            colour = colour_binding
        size = _affine_eval(self.size, k)
        if self.kind == "G":
            base = state.G(size, colour)
        else:
            base = state.E(size, colour, self.over)
        if self.sub is not None:
            base = substitute(base, self.sub, qmax)
        if base.degmax is not None:
            coeff = coeff.cap_degree(base.degmax)
        return coeff * base

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind != "const":
            out["colour"] = self.colour
            out["size"] = list(self.size)
            if self.over:
                out["over"] = True
        out["coeff"] = {
            "poly": [[c, dict(items), list(qexp)] for c, items, qexp in self.poly],
        }
        if self.den:
            out["coeff"]["den"] = [list(d) for d in self.den]
        if self.sub is not None:
            out["sub"] = self.sub.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "EqTerm":
        coeff = data.get("coeff", {})
        poly_json = coeff.get("poly", [[1, {}, [0, 0]]])
        poly = tuple(
            (int(c), Monomial.from_dict(vars_).items, (int(e[0]), int(e[1])))
            for c, vars_, e in poly_json)
        den = tuple((int(d[0]), int(d[1])) for d in coeff.get("den", ()))
        sub = data.get("sub")
        return cls(
            kind=data["kind"],
            colour=data.get("colour"),
            size=tuple(data["size"]) if "size" in data else None,
            over=bool(data.get("over", False)),
            poly=poly,
            den=den,
            sub=SubstitutionMap.from_json(sub) if sub else None,
        )


def _term(kind: str, colour: str | None = None, size: Affine | None = None,
          poly=None, den: tuple[Affine, ...] = (),
          sub: SubstitutionMap | None = None, over: bool = False) -> EqTerm:
    if poly is None:
        poly = [(1, {}, (0, 0))]
    norm = tuple((c, Monomial.from_dict(vars_).items, (e[0], e[1]))
                 for c, vars_, e in poly)
    return EqTerm(kind=kind, colour=colour, size=size, over=over,
                  poly=norm, den=tuple(den), sub=sub)


@dataclass(frozen=True)
class EquationSpec:
    name: str
    system: str
    kmin: int
    kmax_default: int
    lhs: tuple[EqTerm, ...]
    rhs: tuple[EqTerm, ...]
    colours: tuple[str, ...] | None = None    # bindings for placeholder "x"
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {
            "name": self.name,
            "system": self.system,
            "kmin": self.kmin,
            "kmax_default": self.kmax_default,
            "lhs": [t.to_json() for t in self.lhs],
            "rhs": [t.to_json() for t in self.rhs],
        }
        if self.colours:
            out["colours"] = list(self.colours)
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict) -> "EquationSpec":
        return cls(
            name=data["name"],
            system=data["system"],
            kmin=int(data["kmin"]),
            kmax_default=int(data.get("kmax_default", data["kmin"])),
            lhs=tuple(EqTerm.from_json(t) for t in data["lhs"]),
            rhs=tuple(EqTerm.from_json(t) for t in data["rhs"]),
            colours=tuple(data["colours"]) if data.get("colours") else None,
            note=data.get("note", ""),
        )


@dataclass
class EquationReport:
    name: str
    system: str
    kmin: int
    kmax: int
    qmax: int
    holds: bool
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "system": self.system,
            "k_range": [self.kmin, self.kmax],
            "qmax": self.qmax,
            "holds": self.holds,
            "failures": self.failures,
        }


def _sum_terms(terms: Sequence[EqTerm], state: RecurrenceState, k: int,
               colour: str | None) -> TruncatedSeries:
    total = TruncatedSeries.zero(state.qmax, state.degmax)
    for t in terms:
        total = total + t.evaluate(state, k, colour)
    return total


def check_equation(spec: EquationSpec, sys: ColouredSystem | None = None,
                   kmax: int | None = None, qmax: int = 30,
                   degmax: int | None = None,
                   state: RecurrenceState | None = None) -> EquationReport:
    """Evaluate both sides for every k in range (and every colour binding)
    and compare the truncated series exactly."""
    if sys is None:
        sys = build_preset(spec.system)
    if kmax is None:
        kmax = spec.kmax_default
    if kmax < spec.kmin:
        raise EquationRangeError(
            f"equation {spec.name} is declared for k >= {spec.kmin}")
    if state is None:
        state = RecurrenceState(sys, qmax, degmax, direction="largest")
    report = EquationReport(spec.name, sys.name, spec.kmin, kmax, qmax, True)
    bindings = spec.colours or (None,)
    for k in range(spec.kmin, kmax + 1):
        for colour in bindings:
            lhs = _sum_terms(spec.lhs, state, k, colour)
            rhs = _sum_terms(spec.rhs, state, k, colour)
            if lhs != rhs:
                n = next(i for i in range(qmax + 1)
                         if lhs.coefficient(i) != rhs.coefficient(i))
                report.holds = False
                report.failures.append({
                    "k": k,
                    **({"colour": colour} if colour else {}),
                    "first_mismatch_exponent": n,
                    "lhs_coefficient": str(lhs.coefficient(n)),
                    "rhs_coefficient": str(rhs.coefficient(n)),
                })
    return report


# ---------------------------------------------------------------------------
# the documented equations
# ---------------------------------------------------------------------------


def _sigma_swap() -> SubstitutionMap:
    """(q; a, b) -> (q; b, aq): swap the colour variables, shifting the new
    b-argument by one power of q."""
    return SubstitutionMap(1, {
        "a": (Monomial.var("b"), 0),
        "b": (Monomial.var("a"), 1),
    })


def _q_shift_both() -> SubstitutionMap:
    """(q; a, b) -> (q; aq, bq)."""
    return SubstitutionMap(1, {
        "a": (Monomial.var("a"), 1),
        "b": (Monomial.var("b"), 1),
    })


def builtin_equations() -> list[EquationSpec]:
    """Every recurrence / initial condition / functional equation the
    documented systems satisfy, with validated k ranges."""
    eqs: list[EquationSpec] = []

    # -- two-colour distinct-part system ------------------------------------
    eqs.append(EquationSpec(
        name="schur-rec-a", system="schur-weighted", kmin=1, kmax_default=15,
        lhs=(_term("G", "a", (1, 0)),),
        rhs=(_term("G", "ab", (1, 0)),
             _term("G", "a", (1, -1), poly=[(1, {"a": 1}, (1, 0))])),
        note="G_k_a = G_k_ab + a q^k G_(k-1)_a"))
    eqs.append(EquationSpec(
        name="schur-rec-b", system="schur-weighted", kmin=1, kmax_default=15,
        lhs=(_term("G", "b", (1, 0)),),
        rhs=(_term("G", "a", (1, 0)),
             _term("G", "b", (1, -1), poly=[(1, {"b": 1}, (1, 0))])),
        note="G_k_b = G_k_a + b q^k G_(k-1)_b"))
    eqs.append(EquationSpec(
        name="schur-rec-ab", system="schur-weighted", kmin=1, kmax_default=15,
        lhs=(_term("G", "ab", (1, 0)),),
        rhs=(_term("G", "b", (1, -1)),
             _term("G", "b", (1, -2), poly=[(1, {"a": 1, "b": 1}, (1, 0))])),
        note="G_k_ab = G_(k-1)_b + ab q^k G_(k-2)_b"))
    eqs.append(EquationSpec(
        name="schur-initial-one", system="schur-weighted", kmin=0,
        kmax_default=0, colours=("a", "b", "ab"),
        lhs=(_term("G", "x", (0, 0)),),
        rhs=(_term("const"),),
        note="G_0_x = 1"))
    eqs.append(EquationSpec(
        name="schur-initial-zero", system="schur-weighted", kmin=0,
        kmax_default=0, colours=("a", "b", "ab"),
        lhs=(_term("G", "x", (0, -1)),),
        rhs=(),
        note="G_(-1)_x = 0"))
    eqs.append(EquationSpec(
        name="schur-functional", system="schur-weighted", kmin=0,
        kmax_default=12,
        lhs=(_term("G", "ab", (1, 2)),),
        rhs=(_term("G", "b", (1, 0),
                   poly=[(1, {}, (0, 0)), (1, {"a": 1}, (0, 1)),
                         (1, {"b": 1}, (0, 1)), (1, {"a": 1, "b": 1}, (0, 2))],
                   sub=_q_shift_both()),),
        note="G_(k+2)_ab(q;a,b) = (1+aq)(1+bq) G_k_b(q;aq,bq)"))

    # -- five-colour system --------------------------------------------------
    eqs.append(EquationSpec(
        name="siladic-rec-ab-odd", system="siladic-weighted", kmin=0,
        kmax_default=12,
        lhs=(_term("G", "ab", (2, 1)),),
        rhs=(_term("G", "b", (2, 0)),
             _term("G", "a", (2, -1), poly=[(1, {"a": 1, "b": 1}, (2, 1))])),
        note="G_(2k+1)_ab = G_2k_b + ab q^(2k+1) G_(2k-1)_a"))
    eqs.append(EquationSpec(
        name="siladic-sigma-ab-odd", system="siladic-weighted", kmin=1,
        kmax_default=10,
        lhs=(_term("G", "ab", (2, 1)),),
        rhs=(_term("G", "a", (2, 0),
                   poly=[(1, {}, (0, 0)), (1, {"a": 1}, (0, 1))],
                   sub=_sigma_swap()),),
        note="G_(2k+1)_ab(q;a,b) = (1+aq) G_2k_a(q;b,aq)"))
    eqs.append(EquationSpec(
        name="siladic-sigma-b2", system="siladic-weighted", kmin=0,
        kmax_default=10,
        lhs=(_term("G", "b2", (2, 1)),),
        rhs=(_term("G", "b", (2, 0),
                   poly=[(1, {}, (0, 0)), (1, {"a": 1}, (0, 1))],
                   sub=_sigma_swap()),),
        note="G_(2k+1)_b2(q;a,b) = (1+aq) G_2k_b(q;b,aq)"))
    eqs.append(EquationSpec(
        name="siladic-sigma-ab-even", system="siladic-weighted", kmin=0,
        kmax_default=10,
        lhs=(_term("G", "ab", (2, 2)),),
        rhs=(_term("G", "a", (2, 1),
                   poly=[(1, {}, (0, 0)), (1, {"a": 1}, (0, 1))],
                   sub=_sigma_swap()),),
        note="G_(2k+2)_ab(q;a,b) = (1+aq) G_(2k+1)_a(q;b,aq)"))
    eqs.append(EquationSpec(
        name="siladic-sigma-a2", system="siladic-weighted", kmin=1,
        kmax_default=10,
        lhs=(_term("G", "a2", (2, 1)),),
        rhs=(_term("G", "b", (2, -1),
                   poly=[(1, {}, (0, 0)), (1, {"a": 1}, (0, 1))],
                   sub=_sigma_swap()),),
        note="G_(2k+1)_a2(q;a,b) = (1+aq) G_(2k-1)_b(q;b,aq)"))

    # -- four-colour system --------------------------------------------------
    eqs.append(EquationSpec(
        name="primc-eg", system="primc-weighted", kmin=2, kmax_default=12,
        lhs=(_term("G", "a", (1, 0)),
             _term("G", "d", (1, -1), poly=[(-1, {}, (0, 0))])),
        rhs=(_term("E", "b", (1, -1), poly=[(1, {"a": 1}, (1, 0))]),
             _term("G", "d", (1, -2), poly=[(1, {"a": 1}, (1, 0))])),
        note="G_k_a - G_(k-1)_d = a q^k (E_(k-1)_b + G_(k-2)_d)"))
    eqs.append(EquationSpec(
        name="primc-qdiff", system="primc-weighted", kmin=3, kmax_default=12,
        lhs=(_term("G", "d", (1, 0),
                   poly=[(1, {}, (0, 0)), (-1, {"c": 1}, (1, 0))]),),
        rhs=(_term("G", "d", (1, -1),
                   poly=[(1, {}, (0, 0)), (-1, {"c": 1}, (2, 0))],
                   den=((1, 0),)),
             _term("G", "d", (1, -2),
                   poly=[(1, {"a": 1}, (1, 0)), (1, {"d": 1}, (1, 0)),
                         (1, {"a": 1, "d": 1}, (2, 0))],
                   den=((1, -1),)),
             _term("G", "d", (1, -3),
                   poly=[(1, {"a": 1, "d": 1}, (2, -1))],
                   den=((1, -2),))),
        note="(1-cq^k) G_k_d = (1-cq^2k)/(1-q^k) G_(k-1)_d + "
             "(aq^k+dq^k+adq^2k)/(1-q^(k-1)) G_(k-2)_d + "
             "adq^(2k-1)/(1-q^(k-2)) G_(k-3)_d"))
    return eqs


def builtin_equation(name: str) -> EquationSpec:
    for eq in builtin_equations():
        if eq.name == name:
            return eq
    known = ", ".join(e.name for e in builtin_equations())
    raise RecurrenceError(f"unknown equation {name!r}; known: {known}")
