"""Exact arithmetic for truncated q-series with polynomial colour coefficients.

Everything in this module is exact: coefficients are arbitrary-precision
integers attached to monomials in named colour variables, and a series is
truncated at a fixed q-order ``qmax`` (optionally also at a total colour
degree ``degmax``).  The pieces fit together as

    Monomial        a^2*b              (immutable, hashable)
    Polynomial      3*a^2*b - c        (sparse dict of monomials)
    TruncatedSeries sum c_n(vars) q^n  for n = 0..qmax
    ProductSpec     prod (1 - c q^(start+j*mod))^(-power)
    SubstitutionMap q -> q^m, var -> monomial * q^shift

Monomials are ordered graded-lexicographically; ties inside a degree are
broken by the variable names themselves (alphabetical), so the order is a
fixed property of the data and does not depend on construction order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Mapping


class AlgebraError(ValueError):
    """Base class for arithmetic contract violations."""


class TruncationMismatch(AlgebraError):
    """Two series with different q-truncations were combined."""


class SubstitutionError(AlgebraError):
    """A substitution would produce undefined or negative q-exponents."""


class ProductSpecError(AlgebraError):
    """A product specification violates its well-formedness rules."""


class FactorizationError(AlgebraError):
    """A series cannot be factorized (constant term is not 1)."""


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------


class Monomial:
    """A product of variables with positive integer exponents.

    Internally a sorted tuple of (name, exponent) pairs; the empty tuple is
    the monomial 1.  Instances are immutable and hashable.
    """

    __slots__ = ("_items", "_degree", "_hash")

    def __init__(self, items: Iterable[tuple[str, int]] = ()):
        merged: dict[str, int] = {}
        for name, exp in items:
            if exp == 0:
                continue
            if exp < 0:
                raise AlgebraError(f"negative exponent for variable {name!r}")
            merged[name] = merged.get(name, 0) + exp
        self._items = tuple(sorted(merged.items()))
        self._degree = sum(e for _, e in self._items)
        self._hash = hash(self._items)

    @classmethod
    def one(cls) -> "Monomial":
        return _MONOMIAL_ONE

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Monomial":
        return cls(((name, exp),))

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "Monomial":
        return cls(d.items())

    @property
    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    @property
    def degree(self) -> int:
        return self._degree

    def exponent(self, name: str) -> int:
        for n, e in self._items:
            if n == name:
                return e
        return 0

    def variables(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self._items)

    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self._items:
            return other
        if not other._items:
            return self
        return Monomial(self._items + other._items)

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise AlgebraError("monomials cannot be raised to negative powers")
        if k == 0 or not self._items:
            return _MONOMIAL_ONE
        return Monomial((n, e * k) for n, e in self._items)

    def sort_key(self) -> tuple:
        """Graded-lexicographic key: degree first, then the item tuple."""
        return (self._degree, self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self._items)

    def __repr__(self) -> str:
        return f"Monomial({str(self)})"

    def to_json(self) -> dict[str, int]:
        return {n: e for n, e in self._items}


_MONOMIAL_ONE = Monomial()


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Sparse integer polynomial in the colour variables.

    Stored as a dict Monomial -> nonzero int.  The dict is treated as
    immutable after construction; operations return new instances.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        if terms is None:
            self._terms: dict[Monomial, int] = {}
        else:
            self._terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({_MONOMIAL_ONE: 1})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({_MONOMIAL_ONE: c}) if c else cls()

    @classmethod
    def term(cls, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return cls({mono: coeff}) if coeff else cls()

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({Monomial.var(name): 1})

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> "Polynomial":
        # internal: caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> int:
        return self._terms.get(_MONOMIAL_ONE, 0)

    def max_degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self._terms or not other._terms:
            return Polynomial.zero()
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    def scale(self, coeff: int, mono: Monomial = _MONOMIAL_ONE) -> "Polynomial":
        """Multiply by a single term coeff * mono."""
        if coeff == 0:
            return Polynomial.zero()
        if mono.is_one():
            if coeff == 1:
                return self
            return Polynomial._raw({m: c * coeff for m, c in self._terms.items()})
        return Polynomial._raw({m * mono: c * coeff for m, c in self._terms.items()})

    def cap_degree(self, degmax: int | None) -> "Polynomial":
        if degmax is None:
            return self
        kept = {m: c for m, c in self._terms.items() if m.degree <= degmax}
        if len(kept) == len(self._terms):
            return self
        return Polynomial._raw(kept)

    def substitute_vars(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials (simultaneously)."""
        out = Polynomial.zero()
        for mono, coeff in self._terms.items():
            piece = Polynomial.constant(coeff)
            plain: list[tuple[str, int]] = []
            for name, exp in mono.items:
                if name in images:
                    img = images[name]
                    for _ in range(exp):
                        piece = piece * img
                else:
                    plain.append((name, exp))
            if plain:
                piece = piece.scale(1, Monomial(plain))
            out = out + piece
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            if mono.is_one():
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = str(mono)
            else:
                body = f"{abs(coeff)}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)})"

    def to_json(self) -> list:
        return [[c, m.to_json()] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for coeff, vars_ in data:
            m = Monomial.from_dict(vars_)
            out[m] = out.get(m, 0) + int(coeff)
        return cls(out)


_POLY_ZERO = Polynomial.zero()
_POLY_ONE = Polynomial.one()


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """A q-series known exactly through order qmax.

    ``coeffs[n]`` is the Polynomial coefficient of q^n.  If ``degmax`` is
    set, monomials of total colour degree above it have been dropped and the
    series is only faithful inside that degree window.
    """

    __slots__ = ("qmax", "degmax", "_coeffs")

    def __init__(self, qmax: int, coeffs: Iterable[Polynomial] | None = None,
                 degmax: int | None = None):
        if qmax < 0:
            raise AlgebraError("qmax must be non-negative")
        self.qmax = qmax
        self.degmax = degmax
        if coeffs is None:
            self._coeffs = [_POLY_ZERO] * (qmax + 1)
        else:
            cs = list(coeffs)
            if len(cs) != qmax + 1:
                raise AlgebraError("coefficient list must have qmax+1 entries")
            self._coeffs = cs

    @classmethod
    def one(cls, qmax: int, degmax: int | None = None) -> "TruncatedSeries":
        s = cls(qmax, degmax=degmax)
        s._coeffs[0] = _POLY_ONE
        return s

    @classmethod
    def zero(cls, qmax: int, degmax: int | None = None) -> "TruncatedSeries":
        return cls(qmax, degmax=degmax)

    @classmethod
    def from_term(cls, qmax: int, n: int, poly: Polynomial,
                  degmax: int | None = None) -> "TruncatedSeries":
        s = cls(qmax, degmax=degmax)
        if 0 <= n <= qmax:
            s._coeffs[n] = poly.cap_degree(degmax)
        return s

    @classmethod
    def _from_raw(cls, qmax: int, coeffs: list[Polynomial],
                  degmax: int | None = None) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.qmax = qmax
        s.degmax = degmax
        s._coeffs = coeffs
        return s

    def coefficient(self, n: int) -> Polynomial:
        if not 0 <= n <= self.qmax:
            raise AlgebraError(f"coefficient of q^{n} outside truncation 0..{self.qmax}")
        return self._coeffs[n]

    def coefficients(self) -> list[Polynomial]:
        return list(self._coeffs)

    def is_one(self) -> bool:
        return self._coeffs[0] == _POLY_ONE and all(
            c.is_zero() for c in self._coeffs[1:])

    def _merged_degmax(self, other: "TruncatedSeries") -> int | None:
        if self.degmax is None:
            return other.degmax
        if other.degmax is None:
            return self.degmax
        return min(self.degmax, other.degmax)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.qmax != other.qmax:
            raise TruncationMismatch(
                f"cannot add series with qmax {self.qmax} and {other.qmax}")
        dm = self._merged_degmax(other)
        coeffs = [ (a + b).cap_degree(dm) for a, b in zip(self._coeffs, other._coeffs) ]
        return TruncatedSeries._from_raw(self.qmax, coeffs, dm)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.negate()

    def negate(self) -> "TruncatedSeries":
        return TruncatedSeries._from_raw(
            self.qmax, [-c for c in self._coeffs], self.degmax)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.qmax != other.qmax:
            raise TruncationMismatch(
                f"cannot multiply series with qmax {self.qmax} and {other.qmax}")
        dm = self._merged_degmax(other)
        qmax = self.qmax
        out: list[dict[Monomial, int]] = [dict() for _ in range(qmax + 1)]
        for i, a in enumerate(self._coeffs):
            if a.is_zero():
                continue
            a_terms = a.terms
            for j in range(qmax + 1 - i):
                b = other._coeffs[j]
                if b.is_zero():
                    continue
                bucket = out[i + j]
                for m1, c1 in a_terms.items():
                    d1 = m1.degree
                    for m2, c2 in b.terms.items():
                        if dm is not None and d1 + m2.degree > dm:
                            continue
                        m = m1 * m2
                        s = bucket.get(m, 0) + c1 * c2
                        if s:
                            bucket[m] = s
                        else:
                            bucket.pop(m, None)
        coeffs = [Polynomial._raw(b) for b in out]
        return TruncatedSeries._from_raw(qmax, coeffs, dm)

    def mul_term(self, n: int, poly: Polynomial) -> "TruncatedSeries":
        """Multiply by poly * q^n (a single series term)."""
        if n < 0:
            raise AlgebraError("q-shift must be non-negative")
        coeffs = [_POLY_ZERO] * (self.qmax + 1)
        for i in range(0, self.qmax + 1 - n):
            c = self._coeffs[i]
            if not c.is_zero():
                coeffs[i + n] = (c * poly).cap_degree(self.degmax)
        return TruncatedSeries._from_raw(self.qmax, coeffs, self.degmax)

    def truncate(self, new_qmax: int) -> "TruncatedSeries":
        if new_qmax > self.qmax:
            raise AlgebraError("cannot extend a truncated series")
        return TruncatedSeries._from_raw(
            new_qmax, self._coeffs[: new_qmax + 1], self.degmax)

    def cap_degree(self, degmax: int | None) -> "TruncatedSeries":
        if degmax is None:
            return self
        dm = degmax if self.degmax is None else min(self.degmax, degmax)
        return TruncatedSeries._from_raw(
            self.qmax, [c.cap_degree(dm) for c in self._coeffs], dm)

    def specialize(self, assignments: Mapping[str, int]) -> "TruncatedSeries":
        """Set named variables to integer values (typically 1)."""
        images = {name: Polynomial.constant(v) for name, v in assignments.items()}
        coeffs = [c.substitute_vars(images) for c in self._coeffs]
        return TruncatedSeries._from_raw(self.qmax, coeffs, self.degmax)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.qmax == other.qmax and self._coeffs == other._coeffs

    def __str__(self) -> str:
        rows = []
        for n, c in enumerate(self._coeffs):
            if not c.is_zero():
                rows.append(f"({c})*q^{n}" if n else f"({c})")
        return " + ".join(rows) if rows else "0"

    def __repr__(self) -> str:
        return f"TruncatedSeries(qmax={self.qmax}, {str(self)})"

    def to_json(self) -> dict:
        return {
            "qmax": self.qmax,
            "degmax": self.degmax,
            "coefficients": [c.to_json() for c in self._coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        qmax = int(data["qmax"])
        degmax = data.get("degmax")
        coeffs = [Polynomial.from_json(c) for c in data["coefficients"]]
        return cls(qmax, coeffs, None if degmax is None else int(degmax))


def series_combine(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    """Combine two series with 'add' or 'mul'; truncations must agree."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise AlgebraError(f"unknown combination {op!r} (expected 'add' or 'mul')")


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionMap:
    """q -> q^qpower together with var -> image_monomial * q^shift.

    Images may be the empty monomial (erasing a variable) and shifts may be
    negative as long as every produced q-exponent stays non-negative.
    Variables not listed are left untouched.
    """

    qpower: int
    images: Mapping[str, tuple[Monomial, int]]

    def __post_init__(self):
        if self.qpower < 1:
            raise SubstitutionError("q must map to a positive power of q")
        object.__setattr__(self, "images", dict(self.images))

    @classmethod
    def identity(cls) -> "SubstitutionMap":
        return cls(1, {})

    def max_negative_shift(self) -> int:
        """Largest |shift| among negative shifts (0 if none)."""
        return max((-s for _, s in self.images.values() if s < 0), default=0)

    def apply_monomial(self, mono: Monomial) -> tuple[Monomial, int]:
        """Image of a monomial and the total q-shift it picks up."""
        out = _MONOMIAL_ONE
        shift = 0
        plain: list[tuple[str, int]] = []
        for name, exp in mono.items:
            img = self.images.get(name)
            if img is None:
                plain.append((name, exp))
            else:
                m, s = img
                out = out * (m ** exp)
                shift += s * exp
        if plain:
            out = out * Monomial(plain)
        return out, shift

    def to_json(self) -> dict:
        return {
            "qpower": self.qpower,
            "images": {
                name: {"vars": m.to_json(), "shift": s}
                for name, (m, s) in sorted(self.images.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubstitutionMap":
        images = {
            name: (Monomial.from_dict(img["vars"]), int(img["shift"]))
            for name, img in data.get("images", {}).items()
        }
        return cls(int(data.get("qpower", 1)), images)


def substitute(f: TruncatedSeries, sub: SubstitutionMap, new_qmax: int,
               degmax: int | None = None) -> TruncatedSeries:
    """Apply a substitution map to a series, re-truncating at new_qmax.

    A term c * mu * q^n maps to c * mu' * q^(qpower*n + shift(mu)).  Terms
    that land above new_qmax are dropped; a negative exponent is an error.

    Soundness of the output window: terms of f beyond f.qmax are unknown, so
    we require qpower*f.qmax - neg*D >= new_qmax where neg is the largest
    negative shift and D bounds the colour degree of any coefficient.  D is
    f.degmax when set; otherwise the bound D = n (degree of the coefficient
    of q^n at most n) is used after being checked on the visible window.
    Series whose coefficients violate that growth pattern must carry an
    explicit degmax before being substituted with negative shifts.
    """
    m = sub.qpower
    neg = sub.max_negative_shift()
    if neg > 0:
        if f.degmax is not None:
            if m * f.qmax - neg * f.degmax < new_qmax:
                raise SubstitutionError(
                    "substitution window too small: "
                    f"{m}*{f.qmax} - {neg}*{f.degmax} < {new_qmax}")
        else:
            for n in range(f.qmax + 1):
                if f.coefficient(n).max_degree() > n:
                    raise SubstitutionError(
                        "negative shifts need a degree bound: coefficient of "
                        f"q^{n} has colour degree above {n}; set degmax on the input")
            if (m - neg) * f.qmax < new_qmax:
                raise SubstitutionError(
                    "substitution window too small: "
                    f"({m} - {neg})*{f.qmax} < {new_qmax}")
    else:
        if m * f.qmax < new_qmax:
            raise SubstitutionError(
                f"substitution window too small: {m}*{f.qmax} < {new_qmax}")

    out: list[dict[Monomial, int]] = [dict() for _ in range(new_qmax + 1)]
    for n in range(f.qmax + 1):
        poly = f.coefficient(n)
        if poly.is_zero():
            continue
        base = m * n
        for mono, coeff in poly.terms.items():
            new_mono, shift = sub.apply_monomial(mono)
            e = base + shift
            if e < 0:
                raise SubstitutionError(
                    f"term {mono}*q^{n} maps to negative exponent q^{e}")
            if e > new_qmax:
                continue
            if degmax is not None and new_mono.degree > degmax:
                continue
            bucket = out[e]
            s = bucket.get(new_mono, 0) + coeff
            if s:
                bucket[new_mono] = s
            else:
                bucket.pop(new_mono, None)
    coeffs = [Polynomial._raw(b) for b in out]
    return TruncatedSeries._from_raw(new_qmax, coeffs, degmax)


# ---------------------------------------------------------------------------
# product specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductFactor:
    """One factor family prod_{j>=0} (1 - sign*mono*q^(start+j*mod))^(-power)."""

    sign: int
    mono: Monomial
    start: int
    mod: int
    power: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ProductSpecError("factor sign must be +1 or -1")
        if self.mod < 1:
            raise ProductSpecError("factor modulus must be positive")
        if self.start < 0:
            raise ProductSpecError("factor start must be non-negative")
        if self.start == 0 and self.mono.degree == 0:
            raise ProductSpecError(
                "factor at q^0 must carry a colour (otherwise it is not 1 + higher order)")

    def to_json(self) -> dict:
        return {
            "coeff": {"sign": self.sign, "vars": self.mono.to_json()},
            "start": self.start,
            "mod": self.mod,
            "power": self.power,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProductFactor":
        coeff = data["coeff"]
        return cls(
            sign=int(coeff.get("sign", 1)),
            mono=Monomial.from_dict(coeff.get("vars", {})),
            start=int(data["start"]),
            mod=int(data["mod"]),
            power=int(data["power"]),
        )


@dataclass(frozen=True)
class ProductSpec:
    """A finite list of factor families describing an infinite product."""

    factors: tuple[ProductFactor, ...]

    def __init__(self, factors: Iterable[ProductFactor]):
        object.__setattr__(self, "factors", tuple(factors))

    def negate_powers(self) -> "ProductSpec":
        return ProductSpec(
            ProductFactor(f.sign, f.mono, f.start, f.mod, -f.power)
            for f in self.factors)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]

    @classmethod
    def from_json(cls, data: list) -> "ProductSpec":
        return cls(ProductFactor.from_json(f) for f in data)


def binomial_factor(sign: int, mono: Monomial, n: int, exponent: int,
                    qmax: int, degmax: int | None = None) -> TruncatedSeries:
    """Expand (1 - sign*mono*q^n)^exponent exactly.

    For n = 0 the factor is graded by colour degree alone, which requires
    mono to be non-constant and degmax to be set.
    """
    if n == 0:
        if mono.degree == 0:
            raise ProductSpecError("(1 - c)^e with constant c cannot be expanded")
        if exponent >= 0:
            kmax = exponent
            if degmax is not None:
                kmax = min(kmax, degmax // mono.degree)
        else:
            if degmax is None:
                raise ProductSpecError(
                    "a q^0 factor needs a degmax cap to truncate its expansion")
            kmax = degmax // mono.degree
    else:
        kmax = qmax // n
        if degmax is not None and mono.degree > 0:
            kmax = min(kmax, degmax // mono.degree)
    coeffs = [_POLY_ZERO] * (qmax + 1)
    coeffs[0] = _POLY_ONE
    for k in range(1, kmax + 1):
        if exponent >= 0:
            if k > exponent:
                break
            c = comb(exponent, k) * ((-sign) ** k)
        else:
            c = comb(-exponent + k - 1, k) * (sign ** k)
        idx = n * k
        coeffs[idx] = coeffs[idx] + Polynomial.term(mono ** k, c)
    return TruncatedSeries._from_raw(qmax, coeffs, degmax)


def product_expand(spec: ProductSpec, qmax: int,
                   degmax: int | None = None) -> TruncatedSeries:
    """Expand a product specification into a truncated series."""
    acc = TruncatedSeries.one(qmax, degmax)
    for fac in spec.factors:
        n = fac.start
        if n == 0:
            # a start-0 factor occurs once at q^0, then the family continues
            acc = acc * binomial_factor(fac.sign, fac.mono, 0, -fac.power, qmax, degmax)
            n += fac.mod
        while n <= qmax:
            acc = acc * binomial_factor(fac.sign, fac.mono, n, -fac.power, qmax, degmax)
            n += fac.mod
    return acc


# ---------------------------------------------------------------------------
# euler factorization
# ---------------------------------------------------------------------------


def euler_factorize(f: TruncatedSeries) -> list[tuple[Monomial, int, int]]:
    """Greedy factorization of a unit series into (1 - mono*q^n)^(-e) factors.

    Returns the exponent table as (mono, n, e) triples meaning
    f = prod (1 - mono*q^n)^(-e), exactly within the truncation window.
    Entries are emitted degree by degree; within a degree the remainder's
    terms are peeled lowest monomial first (graded lex), which makes the
    table canonical.  The table is unique for this factor basis, so the
    emission order only affects bookkeeping, never the exponents.
    """
    if f.coefficient(0) != _POLY_ONE:
        raise FactorizationError("series constant term must be exactly 1")
    table: list[tuple[Monomial, int, int]] = []
    rem = f
    for n in range(1, f.qmax + 1):
        cn = rem.coefficient(n)
        if cn.is_zero():
            continue
        for mono, t in cn.sorted_terms():
            table.append((mono, n, t))
            # remove the factor: multiply by (1 - mono q^n)^t
            rem = rem * binomial_factor(1, mono, n, t, f.qmax, f.degmax)
    return table


def euler_table_to_spec(table: Iterable[tuple[Monomial, int, int]]) -> ProductSpec:
    """Encode an exponent table as a ProductSpec.

    Factor families are infinite, so a single factor (1 - mono*q^n)^(-e) is
    written as the quotient of two step-1 families: the family starting at n
    divided by the same family starting at n+1.
    """
    factors: list[ProductFactor] = []
    for mono, n, e in table:
        if e == 0:
            continue
        factors.append(ProductFactor(1, mono, n, 1, e))
        factors.append(ProductFactor(1, mono, n + 1, 1, -e))
    return ProductSpec(factors)


def euler_reexpand(table: Iterable[tuple[Monomial, int, int]], qmax: int,
                   degmax: int | None = None) -> TruncatedSeries:
    """Multiply an exponent table back out (round-trip check helper)."""
    acc = TruncatedSeries.one(qmax, degmax)
    for mono, n, e in table:
        acc = acc * binomial_factor(1, mono, n, -e, qmax, degmax)
    return acc


def geometric_sum_term(poly: Polynomial, n: int, qmax: int,
                       degmax: int | None = None) -> TruncatedSeries:
    """Sum_{k>=1} (poly * q^n)^k, truncated.

    Requires n >= 1, or n = 0 together with a degmax cap and a coefficient
    of positive minimal colour degree (so the sum terminates).
    """
    if n == 0:
        if degmax is None:
            raise AlgebraError("geometric sum at q^0 needs a degmax cap")
        mindeg = min((m.degree for m in poly.terms), default=0)
        if mindeg == 0:
            raise AlgebraError("geometric sum at q^0 needs positive colour degree")
        kmax = degmax // mindeg
    else:
        kmax = qmax // n
    acc = TruncatedSeries.zero(qmax, degmax)
    power = TruncatedSeries.from_term(qmax, 0, _POLY_ONE, degmax)
    for _ in range(kmax):
        power = power.mul_term(n, poly)
        acc = acc + power
    return acc
