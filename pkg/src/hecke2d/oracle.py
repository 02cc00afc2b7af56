"""Ground truth by counting: exact arithmetic over F_q((t1))((t2)).

Everything here works at a concrete prime q and is independent of the
symbolic product tables.  Field elements are Laurent polynomials in t1, t2
with coefficients mod q; every matrix this module touches stays inside that
dense subring, so valuations, coset classification, and convolution counts
are all exact.  Structure coefficients at level zero come out of
product_counts by literally enumerating coset representatives, inverting by
adjugate, and classifying; the suites compare them against the symbolic
engine evaluated at the same q.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from random import Random
from typing import Iterator, Mapping, Union

from .element import BasisIndex

__all__ = [
    "EnumerationError",
    "FieldElem2",
    "INFINITE",
    "LocalFieldMatrix",
    "classify",
    "enumerate_reps",
    "eta_matrix",
    "identity_matrix",
    "in_iwahori",
    "iwahori_sample",
    "parse_field_elem",
    "parse_matrix",
    "product_counts",
    "valuation",
]

_PRIMES = frozenset((2, 3, 5, 7, 11, 13, 17))

#: Valuation of the zero element; compares above every finite pair.
INFINITE = float("inf")

Valuation = Union[tuple[int, int], float]


class EnumerationError(ValueError):
    """Representative enumeration asked for outside its supported range."""


def _check_q(q: int) -> None:
    if q not in _PRIMES:
        raise EnumerationError(f"q must be a prime at most 17, got {q}")


class FieldElem2:
    """A Laurent polynomial sum c * t1^e1 * t2^e2 with coefficients mod q."""

    __slots__ = ("q", "_coeffs")

    def __init__(self, q: int, coeffs: Mapping[tuple[int, int], int] = ()):
        _check_q(q)
        self.q = q
        cleaned = {}
        for (e1, e2), c in dict(coeffs).items():
            c %= q
            if c:
                cleaned[(int(e1), int(e2))] = c
        self._coeffs = cleaned

    @classmethod
    def zero(cls, q: int) -> "FieldElem2":
        return cls(q)

    @classmethod
    def one(cls, q: int) -> "FieldElem2":
        return cls(q, {(0, 0): 1})

    @classmethod
    def monomial(cls, q: int, e1: int, e2: int, c: int = 1) -> "FieldElem2":
        return cls(q, {(e1, e2): c})

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._coeffs.items(), key=lambda kv: _exp_key(kv[0])))

    def _match(self, other: "FieldElem2") -> None:
        if self.q != other.q:
            raise ValueError(f"mixed moduli {self.q} and {other.q}")

    def __add__(self, other: "FieldElem2") -> "FieldElem2":
        self._match(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return FieldElem2(self.q, out)

    def __neg__(self) -> "FieldElem2":
        return FieldElem2(self.q, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "FieldElem2") -> "FieldElem2":
        return self + (-other)

    def __mul__(self, other: "FieldElem2") -> "FieldElem2":
        self._match(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, a2), ca in self._coeffs.items():
            for (b1, b2), cb in other._coeffs.items():
                e = (a1 + b1, a2 + b2)
                out[e] = out.get(e, 0) + ca * cb
        return FieldElem2(self.q, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElem2):
            return NotImplemented
        return self.q == other.q and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.q, frozenset(self._coeffs.items())))

    def text(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for (e1, e2), c in self.items():
            factors = []
            if c != 1 or (e1 == 0 and e2 == 0):
                factors.append(str(c))
            if e1:
                factors.append("t1" if e1 == 1 else f"t1^{e1}")
            if e2:
                factors.append("t2" if e2 == 1 else f"t2^{e2}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FieldElem2(q={self.q}, {self.text()})"


def _exp_key(e: tuple[int, int]) -> tuple[int, int]:
    # right-lex order: compare the t2 exponent first
    return (e[1], e[0])


def valuation(x: FieldElem2) -> Valuation:
    """Right-lex minimum of the exponents present; INFINITE for zero."""
    if x.is_zero():
        return INFINITE
    e2, e1 = min(_exp_key(e) for e in x._coeffs)
    return (e1, e2)


def _val_key(v: Valuation) -> tuple[float, float]:
    if v == INFINITE:
        return (INFINITE, INFINITE)
    return (v[1], v[0])


def _at_least(x: FieldElem2, bound: tuple[int, int]) -> bool:
    return _val_key(valuation(x)) >= _val_key(bound)


class LocalFieldMatrix:
    """A 2x2 matrix over the field with determinant 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: FieldElem2, b: FieldElem2, c: FieldElem2, d: FieldElem2):
        if a * d - b * c != FieldElem2.one(a.q):
            raise ValueError("determinant is not 1")
        self.a, self.b, self.c, self.d = a, b, c, d

    @property
    def q(self) -> int:
        return self.a.q

    def entries(self) -> tuple[FieldElem2, FieldElem2, FieldElem2, FieldElem2]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "LocalFieldMatrix") -> "LocalFieldMatrix":
        return LocalFieldMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "LocalFieldMatrix":
        # adjugate; valid because the determinant is 1
        return LocalFieldMatrix(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalFieldMatrix):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def text(self) -> str:
        a, b, c, d = (e.text() for e in self.entries())
        return f"[[{a},{b}],[{c},{d}]]"

    def __repr__(self) -> str:
        return f"LocalFieldMatrix(q={self.q}, {self.text()})"


def identity_matrix(q: int) -> LocalFieldMatrix:
    one, zero = FieldElem2.one(q), FieldElem2.zero(q)
    return LocalFieldMatrix(one, zero, zero, one)


def eta_matrix(a: int, i: int, j: int, q: int) -> LocalFieldMatrix:
    """The standard representative of the (a, i, j) double coset."""
    zero = FieldElem2.zero(q)
    if a == 1:
        return LocalFieldMatrix(
            FieldElem2.monomial(q, i, j),
            zero,
            zero,
            FieldElem2.monomial(q, -i, -j),
        )
    if a == 2:
        return LocalFieldMatrix(
            zero,
            FieldElem2.monomial(q, i, j),
            FieldElem2.monomial(q, -i, -j, q - 1),
            zero,
        )
    raise ValueError(f"sheet must be 1 or 2, got {a}")


def in_iwahori(x: LocalFieldMatrix) -> bool:
    """Entries integral and the lower-left one vanishing mod t1."""
    return (
        _at_least(x.a, (0, 0))
        and _at_least(x.b, (0, 0))
        and _at_least(x.d, (0, 0))
        and _at_least(x.c, (1, 0))
    )


def classify(x: LocalFieldMatrix) -> BasisIndex:
    """The double-coset label of x, by comparing entry valuations."""
    va, vb, vc, vd = (_val_key(valuation(e)) for e in x.entries())
    if va <= vb and va < vc:
        v1, v2 = valuation(x.a)
        return BasisIndex(1, v1, v2)
    if vb < va and vb < vd:
        v1, v2 = valuation(x.b)
        return BasisIndex(2, v1, v2)
    if vc <= va and vc <= vd:
        v1, v2 = valuation(x.c)
        return BasisIndex(2, -v1, -v2)
    if vd <= vb and vd < vc:
        v1, v2 = valuation(x.d)
        return BasisIndex(1, -v1, -v2)
    raise ValueError("no chamber matched; determinant invariant violated")


# ---------------------------------------------------------------------------
# coset representatives at level zero


def _unit_lifts(q: int, degree: int) -> Iterator[FieldElem2]:
    # polynomials in t1 of degree < degree with nonzero constant term:
    # exactly one lift per unit of the degree-truncated quotient ring
    for coeffs in itertools.product(range(1, q), *[range(q)] * (degree - 1)):
        yield FieldElem2(q, {(n, 0): c for n, c in enumerate(coeffs)})


def _t1(q: int, e: int, c: int = 1) -> FieldElem2:
    return FieldElem2.monomial(q, e, 0, c)


def enumerate_reps(a: int, i: int, q: int, *, limit: int = 4) -> list[LocalFieldMatrix]:
    """All left-coset representatives of the level-zero (a, i) double coset.

    The list always starts with the standard representative; the rest are
    its one-parameter perturbations, one per unit lift.  Only level zero is
    enumerable (elsewhere the coset space is not even countable), and the
    index is capped because the list grows like q^{2|i|}.
    """
    _check_q(q)
    if a not in (1, 2):
        raise EnumerationError(f"sheet must be 1 or 2, got {a}")
    if abs(i) > limit:
        raise EnumerationError(f"|i| = {abs(i)} exceeds the enumeration limit {limit}")
    zero = FieldElem2.zero(q)
    reps = [eta_matrix(a, i, 0, q)]
    if a == 1 and i >= 0:
        for k in range(1, 2 * i + 1):
            for u in _unit_lifts(q, 2 * i - k + 1):
                reps.append(
                    LocalFieldMatrix(_t1(q, i), zero, _t1(q, -i + k) * u, _t1(q, -i))
                )
    elif a == 1:
        for k in range(0, -2 * i):
            for u in _unit_lifts(q, -2 * i - k):
                reps.append(
                    LocalFieldMatrix(_t1(q, i), _t1(q, i + k) * u, zero, _t1(q, -i))
                )
    elif i >= 0:
        for k in range(0, 2 * i + 1):
            for u in _unit_lifts(q, 2 * i - k + 1):
                reps.append(
                    LocalFieldMatrix(
                        zero, _t1(q, i), _t1(q, -i, q - 1), _t1(q, -i + k, q - 1) * u
                    )
                )
    else:
        for k in range(1, -2 * i):
            for u in _unit_lifts(q, -2 * i - k):
                reps.append(
                    LocalFieldMatrix(
                        _t1(q, i + k) * u, _t1(q, i), _t1(q, -i, q - 1), zero
                    )
                )
    return reps


def product_counts(
    x: BasisIndex, y: BasisIndex, q: int, *, limit: int = 4
) -> dict[BasisIndex, Fraction]:
    """Convolution coefficients of two level-zero basis functions, by counting.

    The coefficient at a target label is 1/q times the number of
    representatives z of the right factor whose adjusted product
    eta(target) * z^{-1} classifies into the left factor's coset.  Keys are
    emitted in sorted label order and zero coefficients are dropped.
    """
    a, i, j = BasisIndex(*x)
    b, k, l = BasisIndex(*y)
    if j != 0 or l != 0:
        raise EnumerationError("counting products requires both levels zero")
    if abs(i) > limit:
        raise EnumerationError(f"|i| = {abs(i)} exceeds the enumeration limit {limit}")
    inverses = [z.inverse() for z in enumerate_reps(b, k, q, limit=limit)]
    left = (a, i, 0)
    out: dict[BasisIndex, Fraction] = {}
    span = abs(i) + abs(k) + 1
    for c in (1, 2):
        for m in range(-span, span + 1):
            eta = eta_matrix(c, m, 0, q)
            n = sum(1 for zi in inverses if classify(eta * zi) == left)
            if n:
                out[BasisIndex(c, m, 0)] = Fraction(n, q)
    return out


# ---------------------------------------------------------------------------
# random integral sandwiches


def iwahori_sample(rng: Random, q: int, *, factors: int = 4) -> LocalFieldMatrix:
    """A random product of elementary matrices lying in the Iwahori subgroup."""
    one, zero = FieldElem2.one(q), FieldElem2.zero(q)
    out = identity_matrix(q)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:
            f = _random_integral(rng, q, (0, 0))
            step = LocalFieldMatrix(one, f, zero, one)
        elif kind == 1:
            f = _random_integral(rng, q, (1, 0))
            step = LocalFieldMatrix(one, zero, f, one)
        else:
            u = rng.randrange(1, q)
            step = LocalFieldMatrix(
                FieldElem2.monomial(q, 0, 0, u),
                zero,
                zero,
                FieldElem2.monomial(q, 0, 0, pow(u, -1, q)),
            )
        out = out * step
    return out


def _random_integral(
    rng: Random, q: int, bound: tuple[int, int]
) -> FieldElem2:
    # a short random polynomial all of whose terms sit above the bound
    coeffs: dict[tuple[int, int], int] = {}
    for _ in range(rng.randrange(3)):
        e2 = rng.randrange(0, 3)
        e1 = rng.randrange(bound[0], 3) if e2 == bound[1] else rng.randrange(-2, 3)
        if (e2, e1) >= (bound[1], bound[0]):
            coeffs[(e1, e2)] = rng.randrange(q)
    return FieldElem2(q, coeffs)


# ---------------------------------------------------------------------------
# literal syntax for entries and matrices, e.g. "[[t1*t2,0],[0,t1^-1*t2^-1]]"

_TOKEN_RE = re.compile(r"\s*(t1|t2|\d+|\^|\*|\+|-|\[|\]|,)")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ValueError(f"bad character at {text[pos:pos + 8]!r}")
            self.items.append(m.group(1))
            pos = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'a token'}, got {tok!r}")
        self.pos += 1
        return tok


def _parse_int(toks: _Tokens) -> int:
    sign = 1
    if toks.peek() == "-":
        toks.take()
        sign = -1
    return sign * int(toks.take())


def _parse_factor(toks: _Tokens, q: int) -> FieldElem2:
    tok = toks.peek()
    if tok == "-":
        # a negated monomial entry such as -t1^-1*t2^-1
        toks.take()
        return -_parse_factor(toks, q)
    if tok in ("t1", "t2"):
        toks.take()
        e = 1
        if toks.peek() == "^":
            toks.take()
            e = _parse_int(toks)
        return FieldElem2.monomial(q, e if tok == "t1" else 0, e if tok == "t2" else 0)
    return FieldElem2.monomial(q, 0, 0, _parse_int(toks))


def _parse_term(toks: _Tokens, q: int) -> FieldElem2:
    out = _parse_factor(toks, q)
    while toks.peek() == "*":
        toks.take()
        out = out * _parse_factor(toks, q)
    return out


def _parse_sum(toks: _Tokens, q: int) -> FieldElem2:
    out = _parse_term(toks, q)
    while toks.peek() in ("+", "-"):
        op = toks.take()
        term = _parse_term(toks, q)
        out = out + term if op == "+" else out - term
    return out


def parse_field_elem(text: str, q: int) -> FieldElem2:
    """Parse a Laurent polynomial in t1, t2 with integer coefficients."""
    toks = _Tokens(text)
    out = _parse_sum(toks, q)
    if toks.peek() is not None:
        raise ValueError(f"trailing input at {toks.peek()!r}")
    return out


def parse_matrix(text: str, q: int) -> LocalFieldMatrix:
    """Parse a matrix literal [[a,b],[c,d]] of Laurent polynomial entries."""
    toks = _Tokens(text)
    toks.take("[")
    rows = []
    for row in range(2):
        toks.take("[")
        first = _parse_sum(toks, q)
        toks.take(",")
        second = _parse_sum(toks, q)
        toks.take("]")
        rows.append((first, second))
        if row == 0:
            toks.take(",")
    toks.take("]")
    if toks.peek() is not None:
        raise ValueError(f"trailing input at {toks.peek()!r}")
    return LocalFieldMatrix(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
