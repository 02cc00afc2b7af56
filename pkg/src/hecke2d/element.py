"""Element model: per-(sheet, level) rows of basis coefficients on Z.

A row stores a locally finite coefficient function through disjoint strips.
On a strip [lo, hi] the coefficient at index m is a finite sum of terms
poly(m) * s^(e*m), an exponential polynomial in m.  Support shapes follow the
level sign: bounded above for positive level, bounded below for negative,
finite at level zero.  This class of rows contains every generator and is
closed under convolution, which is what makes exact computation possible.

Zero testing is exact: an exponential polynomial whose terms carry N = sum of
(deg poly + 1) coefficients and which vanishes at N consecutive integers is
identically zero (a confluent Vandermonde matrix over Q(s) in the distinct
bases s^e is nonsingular), so vanishing on a strip is decidable from at most
N point evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .coeff import Coeff, ParseError

__all__ = [
    "NEG_INF",
    "POS_INF",
    "Bound",
    "ShapeError",
    "IndexPoly",
    "ExpPolyTerm",
    "Strip",
    "RowKey",
    "RowSeries",
    "BasisIndex",
    "HeckeElement",
    "zero_element",
    "add",
    "scale",
    "equals",
    "canonicalize",
    "coefficient_at",
    "level_projection",
    "element_to_json",
    "element_from_json",
]

NEG_INF = float("-inf")
POS_INF = float("inf")
Bound = Union[int, float]


class ShapeError(ValueError):
    """A row violates its level's support-shape constraint."""


def _is_finite(b: Bound) -> bool:
    return isinstance(b, int)


def _check_bound(b: Bound) -> Bound:
    if isinstance(b, int):
        return b
    if b == NEG_INF or b == POS_INF:
        return b
    raise ShapeError(f"bound must be an integer or +-inf, got {b!r}")


# ---------------------------------------------------------------------------


class IndexPoly:
    """Polynomial in the row index m with Coeff coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[Coeff, ...]

    def __init__(self, coeffs: Iterable[Union[Coeff, int, Fraction]] = ()):
        cs = [c if isinstance(c, Coeff) else Coeff._coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IndexPoly is immutable")

    @staticmethod
    def constant(c: Union[Coeff, int, Fraction]) -> "IndexPoly":
        return IndexPoly((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IndexPoly") -> "IndexPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return IndexPoly(out)

    def __neg__(self) -> "IndexPoly":
        return IndexPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IndexPoly") -> "IndexPoly":
        return self + (-other)

    def __mul__(self, other: Union["IndexPoly", Coeff, int, Fraction]) -> "IndexPoly":
        if not isinstance(other, IndexPoly):
            c = other if isinstance(other, Coeff) else Coeff._coerce(other)
            return IndexPoly(tuple(x * c for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IndexPoly()
        out = [Coeff() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return IndexPoly(out)

    __rmul__ = __mul__

    def eval(self, m: int) -> Coeff:
        acc = Coeff()
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def text_descending(self) -> list[str]:
        return [str(c) for c in reversed(self.coeffs)]

    @staticmethod
    def parse_descending(texts: Sequence[str]) -> "IndexPoly":
        if not texts:
            raise ParseError("empty coefficient list")
        return IndexPoly(tuple(Coeff.parse(t) for t in reversed(texts)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c.is_zero():
                continue
            mono = "" if d == 0 else ("m" if d == 1 else f"m^{d}")
            cs = str(c)
            if mono and cs == "1":
                parts.append(mono)
            elif mono and cs == "-1":
                parts.append(f"-{mono}")
            elif mono:
                cs = f"({cs})" if ("+" in cs or " - " in cs or "/" in cs) else cs
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"IndexPoly[{self}]"


class ExpPolyTerm(NamedTuple):
    e: int
    poly: IndexPoly


Terms = tuple[ExpPolyTerm, ...]


def merge_terms(parts: Iterable[tuple[int, IndexPoly]]) -> Terms:
    """Combine (e, poly) parts: sum polynomials with equal e, drop zeros."""
    acc: dict[int, IndexPoly] = {}
    for e, p in parts:
        acc[e] = acc[e] + p if e in acc else p
    return tuple(
        ExpPolyTerm(e, p) for e, p in sorted(acc.items()) if not p.is_zero()
    )


def terms_value(terms: Terms, m: int) -> Coeff:
    acc = Coeff()
    for e, p in terms:
        v = p.eval(m)
        if not v.is_zero():
            acc = acc + v * Coeff.s_power(e * m)
    return acc


def _terms_dim(terms: Terms) -> int:
    return sum(t.poly.degree + 1 for t in terms)


def _terms_sub(a: Terms, b: Terms) -> Terms:
    return merge_terms([(e, p) for e, p in a] + [(e, -p) for e, p in b])


def _is_zero_on(lo: Bound, hi: Bound, terms: Terms) -> bool:
    # vanishing at N consecutive points forces the exp-poly to vanish identically
    if not terms:
        return True
    n = _terms_dim(terms)
    if _is_finite(lo):
        width = (hi - lo + 1) if _is_finite(hi) else n
        pts = range(lo, lo + min(n, width))
    else:
        pts = range(hi - n + 1, hi + 1)
    return all(terms_value(terms, m).is_zero() for m in pts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Strip:
    lo: Bound
    hi: Bound
    terms: Terms

    def __post_init__(self) -> None:
        lo, hi = _check_bound(self.lo), _check_bound(self.hi)
        if not _is_finite(lo) and not _is_finite(hi):
            raise ShapeError("a strip cannot be infinite on both sides")
        if lo > hi:
            raise ShapeError(f"empty strip [{lo}, {hi}]")
        terms = tuple(
            t if isinstance(t, ExpPolyTerm) else ExpPolyTerm(*t) for t in self.terms
        )
        if not terms:
            raise ShapeError("strip with no terms")
        es = [t.e for t in terms]
        if es != sorted(set(es)):
            raise ShapeError("strip terms must have distinct ascending steps")
        if any(t.poly.is_zero() for t in terms):
            raise ShapeError("strip term with zero polynomial")
        object.__setattr__(self, "terms", terms)

    def value_at(self, m: int) -> Coeff:
        if self.lo <= m <= self.hi:
            return terms_value(self.terms, m)
        return Coeff()


def _pick_canonical_terms(a: Terms, b: Terms) -> Terms:
    ka = (len(a), _terms_dim(a), tuple((t.e, t.poly.coeffs) for t in a))
    kb = (len(b), _terms_dim(b), tuple((t.e, t.poly.coeffs) for t in b))
    return a if ka <= kb else b


def normalize_strips(pieces: Iterable[Strip]) -> tuple[Strip, ...]:
    """Refine possibly overlapping strips into a canonical disjoint row.

    Overlaps are summed, zero-valued stretches dropped, and adjacent strips
    merged whenever one term list represents the function on the union.
    """
    pieces = [p for p in pieces if p.terms]
    if not pieces:
        return ()
    cuts: set[int] = set()
    for p in pieces:
        if _is_finite(p.lo):
            cuts.add(p.lo)
        if _is_finite(p.hi):
            cuts.add(p.hi + 1)
    csort = sorted(cuts)
    atoms: list[tuple[Bound, Bound]] = []
    if any(not _is_finite(p.lo) for p in pieces):
        atoms.append((NEG_INF, csort[0] - 1))
    for a, b in zip(csort, csort[1:]):
        atoms.append((a, b - 1))
    last = csort[-1]
    if any(p.hi >= last for p in pieces):
        atoms.append(
            (last, POS_INF)
            if any(not _is_finite(p.hi) for p in pieces)
            else (last, max(p.hi for p in pieces if _is_finite(p.hi)))
        )
    out: list[Strip] = []
    for lo, hi in atoms:
        sample = lo if _is_finite(lo) else hi
        covering = [p for p in pieces if p.lo <= sample <= p.hi]
        if not covering:
            continue
        terms = merge_terms([t for p in covering for t in p.terms])
        if not terms or _is_zero_on(lo, hi, terms):
            continue
        nxt = Strip(lo, hi, terms)
        if out:
            cur = out[-1]
            if _is_finite(cur.hi):
                # a term list merges across a gap only if it vanishes there
                gap_lo, gap_hi = cur.hi + 1, nxt.lo - 1
                diff = _terms_sub(cur.terms, nxt.terms)
                cur_ok = _is_zero_on(nxt.lo, nxt.hi, diff) and (
                    gap_lo > gap_hi or _is_zero_on(gap_lo, gap_hi, cur.terms)
                )
                nxt_ok = _is_zero_on(cur.lo, cur.hi, diff) and (
                    gap_lo > gap_hi or _is_zero_on(gap_lo, gap_hi, nxt.terms)
                )
                if cur_ok and nxt_ok:
                    out[-1] = Strip(
                        cur.lo, nxt.hi, _pick_canonical_terms(cur.terms, nxt.terms)
                    )
                    continue
                if cur_ok:
                    out[-1] = Strip(cur.lo, nxt.hi, cur.terms)
                    continue
                if nxt_ok:
                    out[-1] = Strip(cur.lo, nxt.hi, nxt.terms)
                    continue
        out.append(nxt)
    return tuple(out)


class RowKey(NamedTuple):
    a: int
    j: int


class BasisIndex(NamedTuple):
    a: int
    i: int
    j: int

    @property
    def key(self) -> RowKey:
        return RowKey(self.a, self.j)


@dataclass(frozen=True)
class RowSeries:
    strips: tuple[Strip, ...]

    def __post_init__(self) -> None:
        prev_hi: Bound = NEG_INF
        for idx, s in enumerate(self.strips):
            if idx > 0 and s.lo <= prev_hi:
                raise ShapeError("row strips must be disjoint and ascending")
            prev_hi = s.hi

    def value_at(self, m: int) -> Coeff:
        for s in self.strips:
            if s.lo <= m <= s.hi:
                return terms_value(s.terms, m)
        return Coeff()

    @property
    def support_min(self) -> Bound:
        return self.strips[0].lo if self.strips else POS_INF

    @property
    def support_max(self) -> Bound:
        return self.strips[-1].hi if self.strips else NEG_INF


def _check_row_shape(key: RowKey, strips: tuple[Strip, ...]) -> None:
    a, j = key
    if a not in (1, 2):
        raise ShapeError(f"sheet must be 1 or 2, got {a}")
    for s in strips:
        if j > 0 and not _is_finite(s.hi):
            raise ShapeError(f"level {j} > 0 row must be bounded above")
        if j < 0 and not _is_finite(s.lo):
            raise ShapeError(f"level {j} < 0 row must be bounded below")
        if j == 0 and not (_is_finite(s.lo) and _is_finite(s.hi)):
            raise ShapeError("level 0 row must have finite support")


class HeckeElement:
    """Immutable algebra element: a finite family of rows keyed by (sheet, level)."""

    __slots__ = ("rows", "_lookup")

    rows: tuple[tuple[RowKey, RowSeries], ...]

    def __init__(
        self,
        rows: Union[
            Mapping[tuple[int, int], Iterable[Strip]],
            Iterable[tuple[tuple[int, int], Iterable[Strip]]],
        ] = (),
    ):
        items = rows.items() if isinstance(rows, Mapping) else rows
        acc: dict[RowKey, list[Strip]] = {}
        for raw_key, strips in items:
            key = RowKey(*raw_key)
            acc.setdefault(key, []).extend(strips)
        built: list[tuple[RowKey, RowSeries]] = []
        for key in sorted(acc, key=lambda k: (k.j, k.a)):
            strips = normalize_strips(acc[key])
            if not strips:
                continue
            _check_row_shape(key, strips)
            built.append((key, RowSeries(strips)))
        object.__setattr__(self, "rows", tuple(built))
        object.__setattr__(self, "_lookup", dict(built))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HeckeElement is immutable")

    # -- queries ------------------------------------------------------------

    def row(self, key: tuple[int, int]) -> RowSeries:
        return self._lookup.get(RowKey(*key), RowSeries(()))

    def coefficient_at(self, key: tuple[int, int], m: int) -> Coeff:
        return self.row(key).value_at(m)

    def is_zero(self) -> bool:
        return not self.rows

    def __bool__(self) -> bool:
        return not self.is_zero()

    def levels(self) -> tuple[int, ...]:
        return tuple(sorted({k.j for k, _ in self.rows}))

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        merged: list[tuple[RowKey, list[Strip]]] = []
        for src in (self, other):
            for key, series in src.rows:
                merged.append((key, list(series.strips)))
        return HeckeElement(merged)

    def __neg__(self) -> "HeckeElement":
        return self.scale(Coeff.integer(-1))

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Union[Coeff, int, Fraction]) -> "HeckeElement":
        c = c if isinstance(c, Coeff) else Coeff._coerce(c)
        if c.is_zero():
            return HeckeElement()
        return HeckeElement(
            [
                (
                    key,
                    [
                        Strip(s.lo, s.hi, tuple(ExpPolyTerm(e, p * c) for e, p in s.terms))
                        for s in series.strips
                    ],
                )
                for key, series in self.rows
            ]
        )

    def __rmul__(self, c: Union[Coeff, int, Fraction]) -> "HeckeElement":
        if isinstance(c, (Coeff, int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other: object) -> "HeckeElement":
        if isinstance(other, (Coeff, int, Fraction)):
            return self.scale(other)
        if isinstance(other, HeckeElement):
            from .product import mul

            return mul(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> "HeckeElement":
        if n < 0:
            raise ValueError("negative powers are not defined")
        from .presets import iota

        out = iota()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_zero():
            return "HeckeElement[0]"
        return f"HeckeElement[{len(self.rows)} rows at levels {self.levels()}]"


# ---------------------------------------------------------------------------
# module-level operation surface


def zero_element() -> HeckeElement:
    return HeckeElement()


def add(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    return x + y


def scale(c: Union[Coeff, int, Fraction], x: HeckeElement) -> HeckeElement:
    return x.scale(c)


def equals(x: HeckeElement, y: HeckeElement) -> bool:
    return (x - y).is_zero()


def canonicalize(x: HeckeElement) -> HeckeElement:
    return HeckeElement([(k, s.strips) for k, s in x.rows])


def coefficient_at(x: HeckeElement, key: tuple[int, int], m: int) -> Coeff:
    return x.coefficient_at(key, m)


def level_projection(x: HeckeElement, j: int) -> HeckeElement:
    return HeckeElement([(k, s.strips) for k, s in x.rows if k.j == j])


# ---------------------------------------------------------------------------
# canonical JSON serialization


def _bound_to_json(b: Bound) -> Union[int, str]:
    if _is_finite(b):
        return b
    return "-inf" if b == NEG_INF else "+inf"


def _bound_from_json(v: Union[int, str]) -> Bound:
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    if v == "-inf":
        return NEG_INF
    if v == "+inf":
        return POS_INF
    raise ParseError(f"bad bound {v!r}")


def element_to_json(x: HeckeElement) -> dict:
    return {
        "rows": [
            {
                "a": key.a,
                "j": key.j,
                "strips": [
                    {
                        "lo": _bound_to_json(s.lo),
                        "hi": _bound_to_json(s.hi),
                        "terms": [
                            {"e": t.e, "poly": t.poly.text_descending()}
                            for t in s.terms
                        ],
                    }
                    for s in series.strips
                ],
            }
            for key, series in x.rows
        ]
    }


def element_from_json(data: Mapping) -> HeckeElement:
    if "rows" not in data:
        raise ParseError("element object must have a 'rows' list")
    rows = []
    for row in data["rows"]:
        key = (row["a"], row["j"])
        strips = [
            Strip(
                _bound_from_json(s["lo"]),
                _bound_from_json(s["hi"]),
                tuple(
                    ExpPolyTerm(t["e"], IndexPoly.parse_descending(t["poly"]))
                    for t in s["terms"]
                ),
            )
            for s in row["strips"]
        ]
        rows.append((key, strips))
    return HeckeElement(rows)
