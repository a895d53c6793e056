"""Coloured-integer partition systems: colours, orders, gap rules, dilation.

A ColouredSystem bundles everything needed to decide which sequences of
coloured parts are valid partitions: a list of colours (each with a weight
monomial and a size domain), a rank rule (the total order on coloured
integers), a gap rule giving the minimal difference between adjacent parts,
and explicit forbidden parts.  Systems are immutable; dilation produces a
new system with sizes k -> m*k + o_x and correspondingly transformed gaps,
ranks, and domains.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .algebra import Monomial, SubstitutionMap


class SystemSpecError(ValueError):
    """A system definition violates its well-formedness rules."""


# ---------------------------------------------------------------------------
# parts, domains, colours
# ---------------------------------------------------------------------------


class ColouredPart(NamedTuple):
    size: int
    colour: str
    over: bool = False

    def __str__(self) -> str:
        bar = "~" if self.over else ""
        return f"{self.size}{bar}_{self.colour}"


@dataclass(frozen=True)
class SizeDomain:
    """Allowed part sizes: size >= min_size and, if a modulus is given,
    size mod modulus in residues."""

    min_size: int = 1
    modulus: int | None = None
    residues: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 1:
                raise SystemSpecError("domain modulus must be positive")
            object.__setattr__(
                self, "residues",
                frozenset(r % self.modulus for r in self.residues))
            if not self.residues:
                raise SystemSpecError("residue domain must allow something")

    def contains(self, size: int) -> bool:
        if size < self.min_size:
            return False
        if self.modulus is None:
            return True
        return size % self.modulus in self.residues

    def smallest(self) -> int:
        s = self.min_size
        while not self.contains(s):
            s += 1
        return s

    def sizes_up_to(self, bound: int) -> list[int]:
        return [s for s in range(self.min_size, bound + 1) if self.contains(s)]

    def dilate(self, m: int, offset: int) -> "SizeDomain":
        if self.modulus is None:
            return SizeDomain(min_size=m * self.min_size + offset, modulus=m,
                              residues=frozenset({offset % m}))
        new_mod = m * self.modulus
        new_res = frozenset((m * r + offset) % new_mod for r in self.residues)
        return SizeDomain(min_size=m * self.min_size + offset, modulus=new_mod,
                          residues=new_res)

    def to_json(self) -> dict:
        out: dict = {"min": self.min_size}
        if self.modulus is not None:
            out["modulus"] = self.modulus
            out["residues"] = sorted(self.residues)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SizeDomain":
        return cls(
            min_size=int(data.get("min", 1)),
            modulus=data.get("modulus"),
            residues=frozenset(data.get("residues", ())),
        )


@dataclass(frozen=True)
class ColourDef:
    label: str
    weight: Monomial
    domain: SizeDomain
    overline_allowed: bool = False

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "weight": self.weight.to_json(),
            "domain": self.domain.to_json(),
        }
        if self.overline_allowed:
            out["overline"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ColourDef":
        return cls(
            label=data["label"],
            weight=Monomial.from_dict(data.get("weight", {})),
            domain=SizeDomain.from_json(data.get("domain", {})),
            overline_allowed=bool(data.get("overline", False)),
        )


# ---------------------------------------------------------------------------
# gap rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixGap:
    """Explicit minimal-difference matrix.

    Rows are keyed by the upper part's row class — either its colour, or
    "colour|size mod class_modulus" when row conditions depend on the size
    residue.  Columns are keyed by the lower part's colour.  When
    overline_extra is set, chi(lower part overlined) is added on top.
    """

    rows: Mapping[str, Mapping[str, int]]
    class_modulus: int | None = None
    overline_extra: bool = False

    def __post_init__(self):
        frozen = {rk: dict(cols) for rk, cols in self.rows.items()}
        object.__setattr__(self, "rows", frozen)

    def row_class(self, part: ColouredPart) -> str:
        if self.class_modulus is None:
            return part.colour
        return f"{part.colour}|{part.size % self.class_modulus}"

    def min_gap(self, sys: "ColouredSystem", upper: ColouredPart,
                lower: ColouredPart) -> int:
        rk = self.row_class(upper)
        try:
            g = self.rows[rk][lower.colour]
        except KeyError:
            raise SystemSpecError(
                f"gap matrix has no entry for row {rk!r}, column {lower.colour!r}")
        if self.overline_extra and lower.over:
            g += 1
        return g

    def dilate(self, sys: "ColouredSystem", m: int,
               offsets: Mapping[str, int]) -> "MatrixGap":
        old_mod = self.class_modulus
        new_mod = None if old_mod is None else m * old_mod
        new_rows: dict[str, dict[str, int]] = {}
        for rk, cols in self.rows.items():
            if old_mod is None:
                colour, new_rk = rk, rk
            else:
                colour, res = rk.rsplit("|", 1)
                new_rk = f"{colour}|{(m * int(res) + offsets[colour]) % new_mod}"
            new_cols: dict[str, int] = {}
            for lower_colour, g in cols.items():
                g2 = m * g + offsets[colour] - offsets[lower_colour]
                if g2 < 0:
                    raise SystemSpecError(
                        f"dilation makes gap({rk},{lower_colour}) negative ({g2}):"
                        " inconsistent dilation")
                new_cols[lower_colour] = g2
            new_rows[new_rk] = new_cols
        return MatrixGap(new_rows, new_mod, self.overline_extra)

    def relabel(self, mapping: Mapping[str, str]) -> "MatrixGap":
        new_rows: dict[str, dict[str, int]] = {}
        for rk, cols in self.rows.items():
            if self.class_modulus is None:
                colour, rest = rk, ""
            else:
                colour, res = rk.rsplit("|", 1)
                rest = f"|{res}"
            new_rows[mapping.get(colour, colour) + rest] = {
                mapping.get(c, c): g for c, g in cols.items()}
        return MatrixGap(new_rows, self.class_modulus, self.overline_extra)

    def to_json(self) -> dict:
        out: dict = {"kind": "matrix",
                     "rows": {rk: dict(cols) for rk, cols in self.rows.items()}}
        if self.class_modulus is not None:
            out["class_modulus"] = self.class_modulus
        if self.overline_extra:
            out["overline_extra"] = True
        return out


@dataclass(frozen=True)
class AndrewsGap:
    """gap = w(c(lower)) + chi(lower overlined) - 1 + delta(c(upper), c(lower)),
    where colours are indexed by non-empty subsets of r primary colours,
    w = subset size, and delta(x, y) = 1 when max(x) < min(y)."""

    r: int

    def min_gap(self, sys: "ColouredSystem", upper: ColouredPart,
                lower: ColouredPart) -> int:
        i_up = sys.colour_index(upper.colour) + 1
        i_low = sys.colour_index(lower.colour) + 1
        _, w_low, v_low, _ = andrews_colour_data(i_low)
        _, _, _, z_up = andrews_colour_data(i_up)
        delta = 1 if z_up < v_low else 0
        chi = 1 if lower.over else 0
        return w_low + chi - 1 + delta

    def to_json(self) -> dict:
        return {"kind": "andrews", "r": self.r}


@dataclass(frozen=True)
class FreeOverGap:
    """Canonical-listing rule for unrestricted coloured overpartitions.

    Equal sizes are listed with colour index non-increasing downward and the
    overlined copy of a (size, colour) ahead of its non-overlined copies, so
    the minimal difference is [idx(upper) < idx(lower)] plus, for equal
    colours, chi(lower overlined)."""

    r: int

    def min_gap(self, sys: "ColouredSystem", upper: ColouredPart,
                lower: ColouredPart) -> int:
        i_up = sys.colour_index(upper.colour)
        i_low = sys.colour_index(lower.colour)
        g = 1 if i_up < i_low else 0
        if upper.colour == lower.colour and lower.over:
            g += 1
        return g

    def to_json(self) -> dict:
        return {"kind": "free-overpartition", "r": self.r}


GapRule = MatrixGap | AndrewsGap | FreeOverGap


def gap_rule_from_json(data: dict) -> GapRule:
    kind = data.get("kind")
    if kind == "matrix":
        return MatrixGap(
            rows={rk: {c: int(g) for c, g in cols.items()}
                  for rk, cols in data["rows"].items()},
            class_modulus=data.get("class_modulus"),
            overline_extra=bool(data.get("overline_extra", False)),
        )
    if kind == "andrews":
        return AndrewsGap(int(data["r"]))
    if kind == "free-overpartition":
        return FreeOverGap(int(data["r"]))
    raise SystemSpecError(f"unknown gap rule kind {kind!r}")


# ---------------------------------------------------------------------------
# rank rule
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankRule:
    """rank(part) = mult * size + offsets[colour]; overlined copies share the
    rank of their non-overlined twin."""

    mult: int
    offsets: Mapping[str, int]

    def __post_init__(self):
        if self.mult < 1:
            raise SystemSpecError("rank multiplier must be positive")
        object.__setattr__(self, "offsets", dict(self.offsets))

    def rank(self, part: ColouredPart) -> int:
        try:
            return self.mult * part.size + self.offsets[part.colour]
        except KeyError:
            raise SystemSpecError(f"rank rule has no offset for colour {part.colour!r}")

    def dilate(self, m: int, colour_offsets: Mapping[str, int]) -> "RankRule":
        # rank expressed in dilated sizes: scale ranks by m (order-preserving)
        # and rewrite mult*k + B as mult*size' + (m*B - mult*o_x).
        return RankRule(self.mult, {
            x: m * b - self.mult * colour_offsets[x]
            for x, b in self.offsets.items()})

    def relabel(self, mapping: Mapping[str, str]) -> "RankRule":
        return RankRule(self.mult,
                        {mapping.get(x, x): b for x, b in self.offsets.items()})

    def to_json(self) -> dict:
        return {"mult": self.mult, "offsets": dict(self.offsets)}

    @classmethod
    def from_json(cls, data: dict) -> "RankRule":
        return cls(int(data["mult"]), {x: int(b) for x, b in data["offsets"].items()})


# ---------------------------------------------------------------------------
# dilation spec
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DilationSpec:
    """q -> q^modulus with per-weight-variable q-shifts.

    Colour offsets o_x (the amount added to m*size for colour x) follow from
    the colour's weight monomial: o_x = sum over weight variables of
    exponent * var_shift.  A spec may instead be given colour offsets
    directly, in which case compatible var shifts are solved for when the
    series-level substitution is requested.
    """

    modulus: int
    var_shifts: Mapping[str, int] | None = None
    colour_offsets: Mapping[str, int] | None = None

    def __post_init__(self):
        if self.modulus < 1:
            raise SystemSpecError("dilation modulus must be positive")
        if self.var_shifts is None and self.colour_offsets is None:
            raise SystemSpecError("dilation needs var shifts or colour offsets")
        if self.var_shifts is not None:
            object.__setattr__(self, "var_shifts", dict(self.var_shifts))
        if self.colour_offsets is not None:
            object.__setattr__(self, "colour_offsets", dict(self.colour_offsets))

    def offset_of(self, colour: ColourDef) -> int:
        if self.var_shifts is not None:
            return sum(exp * self.var_shifts.get(name, 0)
                       for name, exp in colour.weight.items)
        try:
            return self.colour_offsets[colour.label]
        except KeyError:
            raise SystemSpecError(f"no dilation offset for colour {colour.label!r}")

    def resolved_var_shifts(self, sys: "ColouredSystem") -> dict[str, int]:
        """Var shifts, solving weight-vars * shifts = colour offsets if needed."""
        if self.var_shifts is not None:
            return dict(self.var_shifts)
        return _solve_var_shifts(sys, self.colour_offsets)

    def to_json(self) -> dict:
        out: dict = {"modulus": self.modulus}
        if self.var_shifts is not None:
            out["var_shifts"] = dict(self.var_shifts)
        if self.colour_offsets is not None:
            out["colour_offsets"] = dict(self.colour_offsets)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DilationSpec":
        return cls(
            modulus=int(data["modulus"]),
            var_shifts=data.get("var_shifts"),
            colour_offsets=data.get("colour_offsets"),
        )


def _solve_var_shifts(sys: "ColouredSystem",
                      offsets: Mapping[str, int]) -> dict[str, int]:
    """Solve sum(exp_x,v * s_v) = o_x exactly over the rationals.

    Any exact solution gives the same q-shift on every realizable weight
    monomial, so underdetermined systems just take free variables as 0.
    """
    variables = sorted({name for c in sys.colours for name, _ in c.weight.items})
    rows: list[list[Fraction]] = []
    for c in sys.colours:
        if c.label not in offsets:
            raise SystemSpecError(f"no dilation offset for colour {c.label!r}")
        row = [Fraction(c.weight.exponent(v)) for v in variables]
        row.append(Fraction(offsets[c.label]))
        rows.append(row)
    ncols = len(variables)
    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_of_col[col] = r
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            raise SystemSpecError(
                "colour offsets are not consistent with any per-variable q-shift")
    shifts: dict[str, int] = {}
    for col, v in enumerate(variables):
        if col in pivot_of_col:
            val = rows[pivot_of_col[col]][ncols]
            if val.denominator != 1:
                raise SystemSpecError(
                    f"q-shift for variable {v!r} is not an integer ({val})")
            shifts[v] = int(val)
        else:
            shifts[v] = 0
    # free columns were taken as 0, so recheck every colour's offset exactly
    for c in sys.colours:
        got = sum(exp * shifts[name] for name, exp in c.weight.items)
        if got != offsets[c.label]:
            raise SystemSpecError(
                "colour offsets are not consistent with any per-variable q-shift")
    return shifts


# ---------------------------------------------------------------------------
# the system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColouredSystem:
    name: str
    colours: tuple[ColourDef, ...]
    gap: GapRule
    rank_rule: RankRule
    min_size: int = 1
    forbidden_parts: frozenset[tuple[int, str]] = frozenset()
    overline_marker: str | None = None
    erased_vars: tuple[str, ...] = ()
    description: str = ""

    _colour_index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(self.colours))
        object.__setattr__(self, "forbidden_parts",
                           frozenset((int(s), c) for s, c in self.forbidden_parts))
        object.__setattr__(self, "erased_vars", tuple(self.erased_vars))
        index = {c.label: i for i, c in enumerate(self.colours)}
        if len(index) != len(self.colours):
            raise SystemSpecError("duplicate colour labels")
        object.__setattr__(self, "_colour_index", index)

    # -- lookups ------------------------------------------------------------

    def colour(self, label: str) -> ColourDef:
        try:
            return self.colours[self._colour_index[label]]
        except KeyError:
            raise SystemSpecError(f"unknown colour {label!r}")

    def colour_index(self, label: str) -> int:
        try:
            return self._colour_index[label]
        except KeyError:
            raise SystemSpecError(f"unknown colour {label!r}")

    def variables(self) -> list[str]:
        vs = {name for c in self.colours for name, _ in c.weight.items}
        if self.overline_marker:
            vs.add(self.overline_marker)
        return sorted(vs)

    def free_variables(self) -> list[str]:
        return [v for v in self.variables() if v not in self.erased_vars]

    @property
    def has_zero_parts(self) -> bool:
        return any(c.domain.contains(0) and (0, c.label) not in self.forbidden_parts
                   for c in self.colours)

    # -- parts --------------------------------------------------------------

    def in_domain(self, part: ColouredPart) -> bool:
        """Size/overline admissible, ignoring the forbidden-part list."""
        try:
            c = self.colour(part.colour)
        except SystemSpecError:
            return False
        if part.over and not c.overline_allowed:
            return False
        return c.domain.contains(part.size)

    def part_validity(self, part: ColouredPart) -> str | None:
        """None if valid, else a human-readable reason."""
        if part.colour not in self._colour_index:
            return f"unknown colour {part.colour!r}"
        c = self.colour(part.colour)
        if part.over and not c.overline_allowed:
            return f"colour {part.colour!r} does not admit overlined parts"
        if not c.domain.contains(part.size):
            return f"size {part.size} outside the domain of colour {part.colour!r}"
        if (part.size, part.colour) in self.forbidden_parts:
            return f"part {part} is explicitly forbidden"
        return None

    def is_valid_part(self, part: ColouredPart) -> bool:
        return self.part_validity(part) is None

    def part_weight(self, part: ColouredPart) -> Monomial:
        w = self.colour(part.colour).weight
        if self.overline_marker and not part.over:
            w = w * Monomial.var(self.overline_marker)
        return w

    def min_gap(self, upper: ColouredPart, lower: ColouredPart) -> int:
        return self.gap.min_gap(self, upper, lower)

    def part_rank(self, part: ColouredPart) -> int:
        reason = self.part_validity(part)
        if reason is not None:
            raise SystemSpecError(reason)
        return self.rank_rule.rank(part)

    def part_key(self, part: ColouredPart) -> tuple[int, int]:
        """(rank, overline flag): the engines' processing order."""
        return (self.rank_rule.rank(part), 1 if part.over else 0)

    def parts_up_to(self, max_size: int,
                    include_forbidden: bool = False) -> list[ColouredPart]:
        """All valid parts with size <= max_size, ascending by part_key."""
        out: list[ColouredPart] = []
        for c in self.colours:
            for s in c.domain.sizes_up_to(max_size):
                if not include_forbidden and (s, c.label) in self.forbidden_parts:
                    continue
                out.append(ColouredPart(s, c.label, False))
                if c.overline_allowed:
                    out.append(ColouredPart(s, c.label, True))
        out.sort(key=self.part_key)
        return out

    # -- construction-time validation ----------------------------------------

    def validate(self, size_limit: int = 40) -> "ColouredSystem":
        """Check rank injectivity and gap/order compatibility on a window."""
        if self.has_zero_parts:
            size_limit = min(size_limit, 12)
        parts = self.parts_up_to(size_limit)
        ranks: dict[int, ColouredPart] = {}
        for p in parts:
            if p.over:
                continue
            rk = self.rank_rule.rank(p)
            if rk in ranks:
                raise SystemSpecError(
                    f"rank collision: {ranks[rk]} and {p} share rank {rk}")
            ranks[rk] = p
        for upper in parts:
            ku = self.part_key(upper)
            for lower in parts:
                if upper.size - lower.size >= self.min_gap(upper, lower):
                    if ku < self.part_key(lower):
                        raise SystemSpecError(
                            "gap rule and order disagree: "
                            f"{lower} may sit directly below {upper}, "
                            f"but rank({upper}) < rank({lower})")
        return self

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {
            "name": self.name,
            "min_size": self.min_size,
            "colours": [c.to_json() for c in self.colours],
            "rank": self.rank_rule.to_json(),
            "gap": self.gap.to_json(),
            "forbidden": sorted([s, c] for s, c in self.forbidden_parts),
        }
        if self.overline_marker:
            out["overline_marker"] = self.overline_marker
        if self.erased_vars:
            out["erased"] = list(self.erased_vars)
        if self.description:
            out["description"] = self.description
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ColouredSystem":
        return cls(
            name=data.get("name", "custom"),
            colours=tuple(ColourDef.from_json(c) for c in data["colours"]),
            gap=gap_rule_from_json(data["gap"]),
            rank_rule=RankRule.from_json(data["rank"]),
            min_size=int(data.get("min_size", 1)),
            forbidden_parts=frozenset((int(s), c)
                                      for s, c in data.get("forbidden", ())),
            overline_marker=data.get("overline_marker"),
            erased_vars=tuple(data.get("erased", ())),
            description=data.get("description", ""),
        ).validate()


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def min_gap(sys: ColouredSystem, upper: ColouredPart, lower: ColouredPart) -> int:
    for p in (upper, lower):
        reason = sys.part_validity(p)
        if reason is not None:
            raise SystemSpecError(reason)
    return sys.min_gap(upper, lower)


def part_rank(sys: ColouredSystem, part: ColouredPart) -> int:
    return sys.part_rank(part)


def andrews_colour_data(i: int, r: int | None = None) -> tuple[Monomial, int, int, int]:
    """(weight, w, v, z) for composite colour index i >= 1: weight is the
    product of primary variables u_k over set bits of i, w the number of set
    bits, v/z the least/greatest set-bit position (1-based)."""
    if i < 1:
        raise SystemSpecError("colour index must be >= 1")
    if r is not None and i > 2 ** r - 1:
        raise SystemSpecError(f"colour index {i} out of range for r={r}")
    bits = [k + 1 for k in range(i.bit_length()) if (i >> k) & 1]
    weight = Monomial((f"u{k}", 1) for k in bits)
    return weight, len(bits), bits[0], bits[-1]


def andrews_colour_label(i: int) -> str:
    bits = [k + 1 for k in range(i.bit_length()) if (i >> k) & 1]
    return "".join(f"u{k}" for k in bits)


def dilate_system(sys: ColouredSystem, d: DilationSpec,
                  name: str | None = None) -> ColouredSystem:
    """Map sizes k -> m*k + o_x and transform domains, gaps, ranks, and
    forbidden parts accordingly."""
    if not isinstance(sys.gap, MatrixGap):
        raise SystemSpecError("only matrix-gap systems can be dilated")
    m = d.modulus
    offsets = {c.label: d.offset_of(c) for c in sys.colours}
    new_colours = []
    for c in sys.colours:
        dom = c.domain.dilate(m, offsets[c.label])
        new_colours.append(replace(c, domain=dom))
    new_forbidden = set()
    for s, label in sys.forbidden_parts:
        new_forbidden.add((m * s + offsets[label], label))
    # every realizable part must land at a non-negative size
    min_realizable: int | None = None
    for c in new_colours:
        smallest = c.domain.smallest()
        period = c.domain.modulus or m
        while (smallest, c.label) in new_forbidden:
            nxt = [s for s in range(smallest + 1, smallest + 1 + 2 * period)
                   if c.domain.contains(s)]
            if not nxt:
                break
            smallest = nxt[0]
        if smallest < 0:
            raise SystemSpecError(
                f"dilation sends colour {c.label!r} parts to negative size {smallest}")
        min_realizable = smallest if min_realizable is None else min(min_realizable,
                                                                     smallest)
    new_sys = ColouredSystem(
        name=name or f"{sys.name}-dilated-m{m}",
        colours=tuple(new_colours),
        gap=sys.gap.dilate(sys, m, offsets),
        rank_rule=sys.rank_rule.dilate(m, offsets),
        min_size=0 if (min_realizable is not None and min_realizable <= 0) else 1,
        forbidden_parts=frozenset(new_forbidden),
        overline_marker=sys.overline_marker,
        erased_vars=sys.erased_vars,
        description=f"{sys.description} (dilated q -> q^{m})".strip(),
    )
    return new_sys.validate()


def statistic_substitution(d: DilationSpec, sys: ColouredSystem) -> SubstitutionMap:
    """Series-level substitution matching dilate_system: q -> q^m and each
    weight variable v -> v * q^shift(v)."""
    shifts = d.resolved_var_shifts(sys)
    images = {v: (Monomial.var(v), s) for v, s in shifts.items()}
    return SubstitutionMap(d.modulus, images)


def relabel_colours(sys: ColouredSystem, label_map: Mapping[str, str],
                    weight_map: Mapping[str, Monomial],
                    name: str) -> ColouredSystem:
    """Rename colours and replace their weight monomials (used to build
    free-colour variants of concrete systems)."""
    new_colours = tuple(
        replace(c, label=label_map.get(c.label, c.label),
                weight=weight_map.get(c.label, c.weight))
        for c in sys.colours)
    if not isinstance(sys.gap, MatrixGap):
        raise SystemSpecError("only matrix-gap systems can be relabeled")
    return ColouredSystem(
        name=name,
        colours=new_colours,
        gap=sys.gap.relabel(label_map),
        rank_rule=sys.rank_rule.relabel(label_map),
        min_size=sys.min_size,
        forbidden_parts=frozenset(
            (s, label_map.get(c, c)) for s, c in sys.forbidden_parts),
        overline_marker=sys.overline_marker,
        erased_vars=(),
        description=f"{sys.name} with free colour variables",
    ).validate()


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def _mono(d: Mapping[str, int]) -> Monomial:
    return Monomial.from_dict(d)


def _schur_weighted() -> ColouredSystem:
    # two free colours a, b and the composite ab; order ab < a < b at each size
    colours = (
        ColourDef("ab", _mono({"a": 1, "b": 1}), SizeDomain(min_size=2)),
        ColourDef("a", _mono({"a": 1}), SizeDomain(min_size=1)),
        ColourDef("b", _mono({"b": 1}), SizeDomain(min_size=1)),
    )
    gap = MatrixGap({
        "a": {"a": 1, "b": 2, "ab": 1},
        "b": {"a": 1, "b": 1, "ab": 1},
        "ab": {"a": 2, "b": 2, "ab": 2},
    })
    rank = RankRule(3, {"ab": -3, "a": -2, "b": -1})
    return ColouredSystem(
        name="schur-weighted", colours=colours, gap=gap, rank_rule=rank,
        description="distinct parts in colours ab < a < b with gap 2 after "
                    "ab-coloured parts or ascending colour pairs",
    ).validate()


_SCHUR_DILATION = DilationSpec(3, var_shifts={"a": -2, "b": -1})


def _schur_dilated_mod3() -> ColouredSystem:
    # one free colour per residue class mod 3, before any colour relation
    colours = (
        ColourDef("a", _mono({"a": 1}), SizeDomain(1, 3, frozenset({1}))),
        ColourDef("b", _mono({"b": 1}), SizeDomain(1, 3, frozenset({2}))),
        ColourDef("c", _mono({"c": 1}), SizeDomain(3, 3, frozenset({0}))),
    )
    gap = MatrixGap({
        "a": {"a": 3, "b": 5, "c": 4},
        "b": {"a": 4, "b": 3, "c": 5},
        "c": {"a": 5, "b": 4, "c": 6},
    })
    rank = RankRule(1, {"a": 0, "b": 0, "c": 0})
    return ColouredSystem(
        name="schur-dilated-mod3", colours=colours, gap=gap, rank_rule=rank,
        description="parts >= 3 apart coloured by residue mod 3 (free colours)",
    ).validate()


def _siladic_weighted(convention: str = "A") -> ColouredSystem:
    colours = (
        ColourDef("a", _mono({"a": 1}), SizeDomain(min_size=1)),
        ColourDef("b", _mono({"b": 1}), SizeDomain(min_size=1)),
        ColourDef("ab", _mono({"a": 1, "b": 1}), SizeDomain(min_size=1)),
        ColourDef("a2", _mono({"a": 2}), SizeDomain(3, 2, frozenset({1}))),
        ColourDef("b2", _mono({"b": 2}), SizeDomain(1, 2, frozenset({1}))),
    )
    gap = MatrixGap({
        "a|1": {"a": 2, "b": 2, "ab": 1, "a2": 2, "b2": 2},
        "b2|1": {"a": 2, "b": 3, "ab": 2, "a2": 2, "b2": 4},
        "b|1": {"a": 1, "b": 2, "ab": 1, "a2": 2, "b2": 2},
        "ab|0": {"a": 2, "b": 2, "ab": 2, "a2": 3, "b2": 3},
        "a|0": {"a": 2, "b": 2, "ab": 2, "a2": 3, "b2": 3},
        "a2|1": {"a": 3, "b": 3, "ab": 3, "a2": 4, "b2": 4},
        "b|0": {"a": 1, "b": 2, "ab": 1, "a2": 1, "b2": 3},
        "ab|1": {"a": 2, "b": 3, "ab": 2, "a2": 2, "b2": 3},
    }, class_modulus=2)
    rank = RankRule(4, {"a": -3, "b": -1, "ab": -4, "a2": -6, "b2": -2})
    forbidden: set[tuple[int, str]] = {(1, "ab"), (1, "b2")}
    if convention == "B":
        forbidden.add((1, "b"))
    elif convention != "A":
        raise SystemSpecError(f"unknown small-part convention {convention!r}")
    sys = ColouredSystem(
        name="siladic-weighted" + ("" if convention == "A" else "-conv" + convention),
        colours=colours, gap=gap, rank_rule=rank,
        forbidden_parts=frozenset(forbidden),
        description="five-colour system with parity-dependent gaps; small-part "
                    f"convention {convention}",
    ).validate()
    _assert_siladic_segment(sys)
    return sys


def _assert_siladic_segment(sys: ColouredSystem) -> None:
    # the displayed initial segment of the order (forbidden parts included,
    # since the order is on coloured integers, not on allowed parts)
    segment = [(1, "ab"), (1, "a"), (1, "b2"), (1, "b"),
               (2, "ab"), (2, "a"), (3, "a2"), (2, "b"),
               (3, "ab"), (3, "a"), (3, "b2"), (3, "b")]
    parts = [p for p in sys.parts_up_to(3, include_forbidden=True) if not p.over]
    got = [(p.size, p.colour) for p in parts][: len(segment)]
    if got != segment:
        raise SystemSpecError(f"order rule breaks the documented segment: {got}")


_SILADIC_DILATION = DilationSpec(4, var_shifts={"a": -3, "b": -1})
_COMPANION_DILATION = DilationSpec(3, var_shifts={"a": -2, "b": -1})


def _primc_weighted() -> ColouredSystem:
    colours = (
        ColourDef("a", _mono({"a": 1}), SizeDomain(min_size=1)),
        ColourDef("b", _mono({"b": 1}), SizeDomain(min_size=1)),
        ColourDef("c", _mono({"c": 1}), SizeDomain(min_size=1)),
        ColourDef("d", _mono({"d": 1}), SizeDomain(min_size=1)),
    )
    gap = MatrixGap({
        "a": {"a": 2, "b": 1, "c": 2, "d": 2},
        "b": {"a": 1, "b": 0, "c": 1, "d": 1},
        "c": {"a": 0, "b": 1, "c": 0, "d": 2},
        "d": {"a": 0, "b": 1, "c": 0, "d": 2},
    })
    rank = RankRule(4, {"a": -4, "b": -3, "c": -2, "d": -1})
    return ColouredSystem(
        name="primc-weighted", colours=colours, gap=gap, rank_rule=rank,
        erased_vars=("b",),
        description="four-colour crystal-base system; b tracked internally "
                    "and erased on output",
    ).validate()


_PRIMC_DILATION = DilationSpec(2, var_shifts={"a": -1, "b": 0, "c": 0, "d": 1})


def _andrews_overpartitions(r: int) -> ColouredSystem:
    if r < 1:
        raise SystemSpecError("r must be >= 1")
    n = 2 ** r - 1
    colours = []
    offsets = {}
    for i in range(1, n + 1):
        label = andrews_colour_label(i)
        weight, _, _, _ = andrews_colour_data(i)
        colours.append(ColourDef(label, weight, SizeDomain(min_size=0),
                                 overline_allowed=True))
        offsets[label] = i - 1
    return ColouredSystem(
        name=f"andrews-overpartitions-r{r}",
        colours=tuple(colours),
        gap=AndrewsGap(r),
        rank_rule=RankRule(n, offsets),
        min_size=0,
        overline_marker="t",
        description=f"overpartitions in {n} composite colours with the "
                    "w + chi - 1 + delta difference rule",
    ).validate()


def _primary_overpartitions(r: int) -> ColouredSystem:
    if r < 1:
        raise SystemSpecError("r must be >= 1")
    colours = []
    offsets = {}
    for i in range(1, r + 1):
        label = f"u{i}"
        colours.append(ColourDef(label, Monomial.var(label), SizeDomain(min_size=0),
                                 overline_allowed=True))
        offsets[label] = i - 1
    return ColouredSystem(
        name=f"primary-overpartitions-r{r}",
        colours=tuple(colours),
        gap=FreeOverGap(r),
        rank_rule=RankRule(r, offsets),
        min_size=0,
        overline_marker="t",
        description=f"unrestricted overpartitions in {r} primary colours",
    ).validate()


def _distinct_odd() -> ColouredSystem:
    colours = (ColourDef("a", Monomial.one(), SizeDomain(1, 2, frozenset({1}))),)
    return ColouredSystem(
        name="distinct-odd", colours=colours,
        gap=MatrixGap({"a": {"a": 2}}),
        rank_rule=RankRule(1, {"a": 0}),
        description="partitions into distinct odd parts (uncoloured counting)",
    ).validate()


def _distinct_residues(name: str, modulus: int, residues: tuple[int, ...],
                       vars_: tuple[str, ...]) -> ColouredSystem:
    colours = tuple(
        ColourDef(v, Monomial.var(v), SizeDomain(1, modulus, frozenset({res})))
        for v, res in zip(vars_, residues))
    rows = {v: {w: 1 for w in vars_} for v in vars_}
    return ColouredSystem(
        name=name, colours=colours,
        gap=MatrixGap(rows),
        rank_rule=RankRule(1, {v: 0 for v in vars_}),
        description=f"distinct parts in residue classes {residues} mod {modulus}",
    ).validate()


def _siladic_dilated_free() -> ColouredSystem:
    base = dilate_system(_siladic_weighted(), _SILADIC_DILATION, "siladic-dilated")
    label_map = {"a": "x1", "b": "x3", "ab": "x0", "a2": "x6", "b2": "x2"}
    weight_map = {old: Monomial.var(new) for old, new in label_map.items()}
    return relabel_colours(base, label_map, weight_map, "siladic-dilated-free")


_PRESET_BUILDERS = {
    "schur-weighted": lambda: _schur_weighted(),
    "schur-dilated-mod3": lambda: _schur_dilated_mod3(),
    "siladic-weighted": lambda: _siladic_weighted("A"),
    "siladic-weighted-convB": lambda: _siladic_weighted("B"),
    "siladic-dilated": lambda: dilate_system(
        _siladic_weighted(), _SILADIC_DILATION, "siladic-dilated"),
    "siladic-dilated-free": lambda: _siladic_dilated_free(),
    "schur-companion": lambda: dilate_system(
        _siladic_weighted(), _COMPANION_DILATION, "schur-companion"),
    "primc-weighted": lambda: _primc_weighted(),
    "primc-dilated": lambda: dilate_system(
        _primc_weighted(), _PRIMC_DILATION, "primc-dilated"),
    "distinct-odd": lambda: _distinct_odd(),
    "distinct-mod3": lambda: _distinct_residues(
        "distinct-mod3", 3, (1, 2), ("a", "b")),
    "distinct-mod4": lambda: _distinct_residues(
        "distinct-mod4", 4, (1, 3), ("a", "b")),
}

_PARAMETRIC_PRESETS = ("andrews-overpartitions", "primary-overpartitions")


def preset_names() -> list[str]:
    """Registry listing; parametric families are listed with an (r) suffix."""
    return sorted(_PRESET_BUILDERS) + [f"{p}(r)" for p in _PARAMETRIC_PRESETS]


def preset_dilation(name: str) -> DilationSpec:
    """The documented dilation attached to a weighted preset."""
    table = {
        "schur-weighted": _SCHUR_DILATION,
        "siladic-weighted": _SILADIC_DILATION,
        "primc-weighted": _PRIMC_DILATION,
    }
    if name not in table:
        raise SystemSpecError(f"no documented dilation for preset {name!r}")
    return table[name]


def build_preset(name: str, r: int | None = None) -> ColouredSystem:
    """Build a named preset.  Parametric families take r, either via the
    argument or inline as e.g. 'andrews-overpartitions(2)'."""
    base = name
    if "(" in name and name.endswith(")"):
        base, arg = name[:-1].split("(", 1)
        if r is None:
            try:
                r = int(arg)
            except ValueError:
                raise SystemSpecError(f"bad preset parameter in {name!r}")
    if base == "andrews-overpartitions":
        if r is None:
            raise SystemSpecError("andrews-overpartitions needs r")
        return _andrews_overpartitions(r)
    if base == "primary-overpartitions":
        if r is None:
            raise SystemSpecError("primary-overpartitions needs r")
        return _primary_overpartitions(r)
    try:
        builder = _PRESET_BUILDERS[base]
    except KeyError:
        raise SystemSpecError(
            f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    return builder()
