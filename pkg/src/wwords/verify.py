"""Named identity verification.

Each registered :class:`IdentityCase` states one partition identity: a
coloured system with difference conditions (the B side) whose generating
function is claimed to equal an independently computed A side — an infinite
product, a plainly countable second system, or both.  ``verify_identity``
computes every requested engine to the same truncation order and compares
all results pairwise, exactly.

Engines:

``enum``
    direct enumeration of the B side (and of the A side when the A side is
    itself a coloured system);
``recurrence``
    the largest/smallest-part recurrence of :mod:`wwords.recurrence`;
``product``
    expansion of the stated infinite product;
``dilation``
    for a case whose system is the dilation of a weighted one: compute the
    weighted series independently and push it through the matching
    ``q -> q^m`` / colour q-shift substitution.

A report never claims more than coefficient-level equality to the verified
order; it is evidence, not a proof.
"""

from __future__ import annotations

import random
import time
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .algebra import (Monomial, ProductFactor, ProductSpec, SubstitutionMap,
                      TruncatedSeries, product_expand, substitute)
from .enumeration import enumerate_series, list_partitions, partition_weight
from .recurrence import dp_series
from .systems import (ColouredPart, DilationSpec, build_preset,
                      preset_dilation, statistic_substitution)

__all__ = [
    "ENGINES",
    "IdentityCase",
    "Report",
    "VerificationError",
    "check_statistics",
    "coefficient_table",
    "format_coefficient_table",
    "identity_case",
    "identity_cases",
    "identity_names",
    "verify_identity",
]


class VerificationError(ValueError):
    """Unusable engine selection, unknown case, or malformed table request."""


#: canonical engine order; reports list engines in request order
ENGINES = ("enum", "recurrence", "product", "dilation")

_UNSET = object()


# ---------------------------------------------------------------------------
# case model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCase:
    """One verifiable identity.

    ``side_b`` names the preset system carrying the difference conditions.
    The A side is ``product`` (an infinite product), ``side_a`` (a second
    system counting the same objects), or both.  ``relation`` substitutes
    colour variables by monomials before any comparison (e.g. ``c -> ab``),
    ``alignment`` renames B-side variables onto the A side's (must be a
    bijection), and ``specialize`` finally pins variables to integers.
    ``dilation_of``/``dilation`` enable the ``dilation`` engine.  A case
    with ``conventions`` tries each named variant of the B side and asserts
    that exactly one matches the A side.  ``statistic`` names a textual
    part-counting rule checked against colour weights by sampling
    (see :func:`check_statistics`).
    """

    name: str
    side_b: str
    product: ProductSpec | None = None
    side_a: str | None = None
    qmax: int = 30
    degmax: int | None = None
    relation: Mapping[str, Mapping[str, int]] | None = None
    alignment: Mapping[str, str] | None = None
    specialize: Mapping[str, int] | None = None
    dilation_of: str | None = None
    dilation: DilationSpec | None = None
    conventions: Mapping[str, str] | None = None
    statistic: str | None = None
    note: str = ""

    def __post_init__(self):
        if self.alignment is not None:
            values = list(self.alignment.values())
            if len(set(values)) != len(values):
                raise VerificationError(
                    f"statistic alignment for {self.name} must be a bijection; "
                    f"got {dict(self.alignment)}")
        if self.dilation_of is not None and self.dilation is None:
            raise VerificationError(
                f"{self.name} names a weighted source but no dilation")

    def applicable_engines(self) -> tuple[str, ...]:
        out = ["enum", "recurrence"]
        if self.product is not None:
            out.append("product")
        if self.dilation_of is not None:
            out.append("dilation")
        return tuple(out)


@dataclass
class Report:
    """Outcome of one verification run.

    ``equal`` means every computed series agreed pairwise on every
    coefficient up to the verified order.  When ``equal`` is false,
    ``first_mismatch`` holds the smallest disagreeing exponent, the
    smallest disagreeing monomial at that exponent, and both coefficients.
    ``conventions`` records how a multi-convention case was resolved.
    ``ms`` is wall-clock duration; it is the only nondeterministic field.
    """

    identity: str
    qmax: int
    degmax: int | None
    engines: tuple[str, ...]
    equal: bool
    first_mismatch: dict | None
    conventions: dict
    ms: int

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "qmax": self.qmax,
            "degmax": self.degmax,
            "engines": list(self.engines),
            "equal": self.equal,
            "first_mismatch": self.first_mismatch,
            "conventions": dict(self.conventions),
            "ms": self.ms,
        }


# ---------------------------------------------------------------------------
# series production
# ---------------------------------------------------------------------------


def _apply_tail(case: IdentityCase, f: TruncatedSeries, qmax: int,
                b_side: bool) -> TruncatedSeries:
    """Relation/alignment (B side only) and specialization (both sides)."""
    if b_side and case.relation:
        images = {v: (Monomial.from_dict(dict(mono)), 0)
                  for v, mono in case.relation.items()}
        f = substitute(f, SubstitutionMap(1, images), qmax, f.degmax)
    if b_side and case.alignment:
        images = {old: (Monomial.var(new), 0)
                  for old, new in case.alignment.items() if old != new}
        if images:
            f = substitute(f, SubstitutionMap(1, images), qmax, f.degmax)
    if case.specialize:
        f = f.specialize(dict(case.specialize))
    return f


def _engine_series(case: IdentityCase, engine: str, side_b_name: str,
                   qmax: int, degmax: int | None,
                   max_nodes: int | None) -> list[tuple[str, TruncatedSeries]]:
    """All (label, series) pairs one engine contributes."""
    if engine == "enum":
        out = [("enum", _apply_tail(
            case, enumerate_series(build_preset(side_b_name), qmax, degmax,
                                   max_nodes), qmax, b_side=True))]
        if case.side_a is not None:
            out.append(("enum-A", _apply_tail(
                case, enumerate_series(build_preset(case.side_a), qmax, degmax,
                                       max_nodes), qmax, b_side=False)))
        return out
    if engine == "recurrence":
        out = [("recurrence", _apply_tail(
            case, dp_series(build_preset(side_b_name), qmax, degmax),
            qmax, b_side=True))]
        if case.side_a is not None:
            out.append(("recurrence-A", _apply_tail(
                case, dp_series(build_preset(case.side_a), qmax, degmax),
                qmax, b_side=False)))
        return out
    if engine == "product":
        return [("product", _apply_tail(
            case, product_expand(case.product, qmax, degmax),
            qmax, b_side=False))]
    if engine == "dilation":
        weighted = build_preset(case.dilation_of)
        sub = statistic_substitution(case.dilation, weighted)
        # every realizable part dilates to a size at least its weighted
        # size, so the weighted series to the same order covers the window
        base = dp_series(weighted, qmax, degmax)
        return [("dilation", _apply_tail(
            case, substitute(base, sub, qmax, degmax), qmax, b_side=True))]
    raise VerificationError(
        f"unknown engine {engine!r}; engines: {', '.join(ENGINES)}")


def _first_mismatch(fa: TruncatedSeries,
                    fb: TruncatedSeries) -> dict | None:
    for n in range(min(fa.qmax, fb.qmax) + 1):
        pa, pb = fa.coefficient(n), fb.coefficient(n)
        if pa != pb:
            diff = pa - pb
            mono, _ = diff.sorted_terms()[0]
            return {
                "n": n,
                "monomial": dict(mono.items),
                "lhs": str(pa.terms.get(mono, 0)),
                "rhs": str(pb.terms.get(mono, 0)),
            }
    return None


def _compare_all(series: list[tuple[str, TruncatedSeries]]
                 ) -> tuple[bool, dict | None]:
    for i in range(len(series)):
        for j in range(i + 1, len(series)):
            mismatch = _first_mismatch(series[i][1], series[j][1])
            if mismatch is not None:
                return False, mismatch
    return True, None


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_identity(case: IdentityCase | str, qmax: int | None = None,
                    degmax=_UNSET, engines: Iterable[str] | None = None,
                    max_nodes: int | None = None) -> Report:
    """Compute every requested engine and compare all results pairwise.

    ``qmax``/``degmax`` default to the case's documented order.  ``engines``
    defaults to every engine applicable to the case; requesting an
    inapplicable one raises :class:`VerificationError` listing the
    applicable set.
    """
    if isinstance(case, str):
        case = identity_case(case)
    started = time.monotonic()
    if qmax is None:
        qmax = case.qmax
    if degmax is _UNSET:
        degmax = case.degmax
    applicable = case.applicable_engines()
    if engines is None:
        chosen = applicable
    else:
        chosen = tuple(dict.fromkeys(engines))
        if not chosen:
            raise VerificationError("no engines requested")
        for eng in chosen:
            if eng not in ENGINES:
                raise VerificationError(
                    f"unknown engine {eng!r}; engines: {', '.join(ENGINES)}")
            if eng not in applicable:
                raise VerificationError(
                    f"engine {eng!r} is not applicable to {case.name}; "
                    f"applicable engines: {', '.join(applicable)}")

    conventions: dict = {}
    if case.conventions:
        if "product" not in chosen:
            raise VerificationError(
                f"{case.name} resolves its small-part convention against the "
                "product side; include the 'product' engine")
        if not any(e in ("enum", "recurrence") for e in chosen):
            raise VerificationError(
                f"{case.name} needs a system engine (enum or recurrence) to "
                "attempt each convention")
        product_pairs = _engine_series(case, "product", case.side_b, qmax,
                                       degmax, max_nodes)
        passed: list[str] = []
        failed: list[str] = []
        mismatch: dict | None = None
        for conv_name, preset in case.conventions.items():
            pairs = list(product_pairs)
            for eng in chosen:
                if eng != "product":
                    pairs.extend(_engine_series(case, eng, preset, qmax,
                                                degmax, max_nodes))
            ok, first = _compare_all(pairs)
            (passed if ok else failed).append(conv_name)
            if not ok and mismatch is None:
                mismatch = first
        equal = len(passed) == 1
        conventions = {"passed": passed, "failed": failed,
                       "resolved": passed[0] if equal else None}
        if equal:
            mismatch = None
        elif mismatch is None:
            raise VerificationError(
                f"conventions {passed} of {case.name} are indistinguishable "
                f"at qmax={qmax}; raise qmax")
    else:
        pairs = []
        for eng in chosen:
            pairs.extend(_engine_series(case, eng, case.side_b, qmax, degmax,
                                        max_nodes))
        equal, mismatch = _compare_all(pairs)

    ms = int((time.monotonic() - started) * 1000)
    return Report(identity=case.name, qmax=qmax, degmax=degmax,
                  engines=chosen, equal=equal, first_mismatch=mismatch,
                  conventions=conventions, ms=ms)


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------


def coefficient_table(f: TruncatedSeries, upto: int) -> list[dict]:
    """Rows ``{"n", "coefficient", "terms"}`` for q^0 .. q^upto.

    Term order within a row is the graded-lexicographic monomial order, so
    the table is deterministic.
    """
    if upto < 0 or upto > f.qmax:
        raise VerificationError(
            f"table range 0..{upto} is outside the series window 0..{f.qmax}")
    rows = []
    for n in range(upto + 1):
        poly = f.coefficient(n)
        rows.append({
            "n": n,
            "coefficient": str(poly),
            "terms": [{"monomial": dict(mono.items), "coefficient": str(c)}
                      for mono, c in poly.sorted_terms()],
        })
    return rows


def format_coefficient_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    width = len(str(rows[-1]["n"]))
    return "\n".join(
        f"q^{row['n']:<{width}} : {row['coefficient']}" for row in rows)


# ---------------------------------------------------------------------------
# textual statistic rules
# ---------------------------------------------------------------------------


def _mod4_counts(parts: tuple[ColouredPart, ...]) -> tuple[int, int]:
    """Counts for the mod-4 refinement: u = #parts = 0,1 (mod 4) plus twice
    #parts = 6 (mod 8); v = #parts = 0,3 (mod 4) plus twice #parts = 2
    (mod 8)."""
    u = v = 0
    for p in parts:
        r4, r8 = p.size % 4, p.size % 8
        if r4 in (0, 1):
            u += 1
        if r8 == 6:
            u += 2
        if r4 in (0, 3):
            v += 1
        if r8 == 2:
            v += 2
    return u, v


_PRIMED_COLOURS = ("a2", "b2")


def _mod6_counts(parts: tuple[ColouredPart, ...]) -> tuple[int, int]:
    """Counts for the mod-3 companion with primed parts: u = #ordinary
    parts = 0,1 (mod 3) plus twice #primed parts = 5 (mod 6); v = #ordinary
    parts = 0,2 (mod 3) plus twice #primed parts = 1 (mod 6)."""
    u = v = 0
    for p in parts:
        if p.colour in _PRIMED_COLOURS:
            if p.size % 6 == 5:
                u += 2
            if p.size % 6 == 1:
                v += 2
        else:
            if p.size % 3 in (0, 1):
                u += 1
            if p.size % 3 in (0, 2):
                v += 1
    return u, v


#: rule name -> (u variable, v variable, counting function, default pool cap)
_STATISTIC_RULES = {
    "siladic-mod4": ("a", "b", _mod4_counts, 36),
    "companion-mod6": ("a", "b", _mod6_counts, 28),
}


def check_statistics(case: IdentityCase | str, samples: int = 200,
                     seed: int = 2026, max_n: int | None = None,
                     max_nodes: int | None = None) -> dict:
    """Sample valid partitions of the case's system and check that the
    textual part-counting rule reproduces the colour-weight exponents.

    The pool is every valid partition of 0..max_n; ``samples`` of them are
    drawn with the seeded generator (all of them when the pool is smaller).
    """
    if isinstance(case, str):
        case = identity_case(case)
    if case.statistic is None:
        raise VerificationError(
            f"{case.name} has no sampled-statistic rule")
    u_var, v_var, counter, default_cap = _STATISTIC_RULES[case.statistic]
    if max_n is None:
        max_n = default_cap
    sys_b = build_preset(case.side_b)
    pool: list[tuple[ColouredPart, ...]] = []
    for n in range(max_n + 1):
        pool.extend(list_partitions(sys_b, n, max_nodes=max_nodes))
    rng = random.Random(seed)
    chosen = list(pool) if len(pool) <= samples else rng.sample(pool, samples)
    mismatches = []
    for partition in chosen:
        weight, _total = partition_weight(sys_b, partition)
        expected = (weight.exponent(u_var), weight.exponent(v_var))
        got = counter(partition)
        if got != expected:
            mismatches.append({
                "partition": [str(p) for p in partition],
                "textual": list(got),
                "weights": list(expected),
            })
    return {
        "identity": case.name,
        "statistic": case.statistic,
        "seed": seed,
        "pool": len(pool),
        "samples": len(chosen),
        "ok": not mismatches,
        "mismatches": mismatches[:5],
    }


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------


def _poch(var: str, start: int, mod: int) -> ProductFactor:
    """One factor family (1 + var*q^start)(1 + var*q^(start+mod))..."""
    return ProductFactor(-1, Monomial.var(var), start, mod, -1)


def _two_colour_product() -> ProductSpec:
    """(1+aq^1)(1+aq^2)... times (1+bq^1)(1+bq^2)...: distinct parts in two
    colours."""
    return ProductSpec([_poch("a", 1, 1), _poch("b", 1, 1)])


def _mod3_product() -> ProductSpec:
    """Distinct a-coloured parts = 1 (mod 3) and b-coloured parts = 2 (mod 3)."""
    return ProductSpec([_poch("a", 1, 3), _poch("b", 2, 3)])


def _mod4_product() -> ProductSpec:
    """Distinct a-coloured parts = 1 (mod 4) and b-coloured parts = 3 (mod 4)."""
    return ProductSpec([_poch("a", 1, 4), _poch("b", 3, 4)])


def _crystal_product() -> ProductSpec:
    """Odd distinct parts coloured a or d over unrestricted parts and
    c-coloured odd parts."""
    return ProductSpec([
        _poch("a", 1, 2),
        _poch("d", 1, 2),
        ProductFactor(1, Monomial.one(), 1, 1, 1),
        ProductFactor(1, Monomial.var("c"), 1, 2, 1),
    ])


def _crystal_dilated_product() -> ProductSpec:
    """The crystal product after q -> q^2 with the documented colour shifts."""
    return ProductSpec([
        _poch("a", 1, 4),
        _poch("d", 3, 4),
        ProductFactor(1, Monomial.one(), 2, 2, 1),
        ProductFactor(1, Monomial.var("c"), 2, 4, 1),
    ])


def _partition_product() -> ProductSpec:
    """1/(q;q): all ordinary partitions."""
    return ProductSpec([ProductFactor(1, Monomial.one(), 1, 1, 1)])


def identity_cases() -> dict[str, IdentityCase]:
    """The registry, keyed by case name, in documentation order."""
    cases = [
        IdentityCase(
            name="theorem-1",
            side_b="siladic-dilated",
            side_a="distinct-odd",
            specialize={"a": 1, "b": 1},
            dilation_of="siladic-weighted",
            dilation=preset_dilation("siladic-weighted"),
            qmax=60,
            note="with both colour statistics erased, the gap-5 system with "
                 "mod-8 residue conditions counts partitions into distinct "
                 "odd parts"),
        IdentityCase(
            name="theorem-2",
            side_b="schur-weighted",
            product=_two_colour_product(),
            qmax=30,
            note="three-colour distinct-part system vs distinct parts in "
                 "two free colours"),
        IdentityCase(
            name="schur-dilated",
            side_b="schur-dilated-mod3",
            product=_mod3_product(),
            relation={"c": {"a": 1, "b": 1}},
            dilation_of="schur-weighted",
            dilation=preset_dilation("schur-weighted"),
            qmax=30,
            note="mod-3 gap system with the colour relation c = ab vs "
                 "distinct parts in residue classes 1 and 2 mod 3"),
        IdentityCase(
            name="theorem-3",
            side_b="siladic-weighted",
            product=_two_colour_product(),
            conventions={"A": "siladic-weighted",
                         "B": "siladic-weighted-convB"},
            qmax=30,
            note="five-colour parity-gap system vs distinct parts in two "
                 "free colours; exactly one small-part convention works"),
        IdentityCase(
            name="theorem-4",
            side_b="siladic-dilated",
            product=_mod4_product(),
            dilation_of="siladic-weighted",
            dilation=preset_dilation("siladic-weighted"),
            statistic="siladic-mod4",
            qmax=60,
            note="gap-5 system with mod-8 conditions, statistics (u, v) from "
                 "part residues, vs distinct parts = 1 and = 3 mod 4"),
        IdentityCase(
            name="theorem-5",
            side_b="schur-companion",
            product=_mod3_product(),
            dilation_of="siladic-weighted",
            dilation=DilationSpec(3, var_shifts={"a": -2, "b": -1}),
            statistic="companion-mod6",
            qmax=60,
            note="ordinary/primed system with gaps 4..7 vs distinct parts "
                 "= 1 and = 2 mod 3; the m=3 dilation of the five-colour "
                 "system"),
        IdentityCase(
            name="theorem-6",
            side_b="primc-weighted",
            product=_crystal_product(),
            qmax=25,
            degmax=25,
            note="four-colour crystal system (b erased) vs the mixed "
                 "product with numerator colours a, d and denominator "
                 "colours 1, c"),
        IdentityCase(
            name="theorem-7",
            side_b="primc-dilated",
            product=_crystal_dilated_product(),
            dilation_of="primc-weighted",
            dilation=preset_dilation("primc-weighted"),
            qmax=50,
            note="parity-split crystal system vs the dilated mixed product; "
                 "the m=2 dilation of the four-colour system"),
        IdentityCase(
            name="primc-conjecture",
            side_b="primc-dilated",
            product=_partition_product(),
            specialize={"a": 1, "c": 1, "d": 1},
            dilation_of="primc-weighted",
            dilation=preset_dilation("primc-weighted"),
            qmax=40,
            note="with all colour statistics erased, the parity-split "
                 "crystal system counts ordinary partitions"),
    ]
    for r, qm, dm in ((1, 12, 8), (2, 12, 8), (3, 10, 6)):
        cases.append(IdentityCase(
            name=f"theorem-8-r{r}",
            side_b=f"andrews-overpartitions({r})",
            side_a=f"primary-overpartitions({r})",
            qmax=qm,
            degmax=dm,
            note=f"overpartitions in {2 ** r - 1} composite colours with the "
                 "w + chi - 1 + delta gaps vs unrestricted overpartitions "
                 f"in {r} primary colours, graded by colour counts and "
                 "non-overlined parts"))
    return {c.name: c for c in cases}


def identity_names() -> list[str]:
    return list(identity_cases())


def identity_case(name: str) -> IdentityCase:
    cases = identity_cases()
    if name not in cases:
        raise VerificationError(
            f"unknown identity {name!r}; known: {', '.join(cases)}")
    return cases[name]
