"""Convolution products.

Three routes compute products, deliberately kept separate so they can check
one another:

* ``mul_basis`` is a literal transcription of the closed product table for a
  pair of basis functions chi^(a)_{i,j} * chi^(b)_{k,l}.  Every branch works
  with concrete integers, so min/max exponents and interval ends need no
  symbolic care.  This is the readable reference.

* ``mul`` extends the table bilinearly to whole strip rows.  Each table
  branch becomes a kernel piece: either a point mass on the anti-diagonal
  n = i + k (or diagonal n = i - k) or a span cut out by affine inequalities
  in (i, k, n).  Summing a strip pair against a piece is done in closed form:
  the inner index is eliminated with a discrete antiderivative (for ratio
  s^alpha != 1 solve R(v) - s^{-alpha} R(v-1) = P(v) of equal degree; for
  ratio 1 the antiderivative has degree one higher), bounds are affine with
  small slopes, and the output index line is split at the finitely many
  integer crossovers of competing bounds.  Active-bound selection is exact
  because all pairwise order relations are constant between crossovers.

* ``coeff_of_product`` computes one output coefficient by enumerating the
  finitely many contributing (i, k) pairs from support windows and summing
  ``mul_basis`` point data, bypassing the resummation calculus entirely.

Products vanish between strictly positive and strictly negative levels, and
output levels add; both facts are baked into the dispatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Union

from .coeff import Coeff, ONE, one_minus_qinv
from .element import (
    BasisIndex,
    Bound,
    ExpPolyTerm,
    HeckeElement,
    IndexPoly,
    NEG_INF,
    POS_INF,
    Strip,
    merge_terms,
)

__all__ = [
    "CaseTableError",
    "InfiniteSupportError",
    "mul_basis",
    "mul",
    "coeff_of_product",
    "PERTURBATIONS",
]


class CaseTableError(ValueError):
    """Index pair falls outside every product-table case (internal invariant)."""


class InfiniteSupportError(ArithmeticError):
    """A contribution sum has no finite bound on one side."""


#: Recognized deliberate table mutations, used by verification suites as a
#: negative control.  "flip-1e" raises the mixed-sign level-0 point exponent
#: min(2i-1, -2k-1) to min(2i, -2k-1).
PERTURBATIONS = (None, "flip-1e")


def _check_perturbation(p: Optional[str]) -> None:
    if p not in PERTURBATIONS:
        raise ValueError(f"unknown perturbation {p!r}")


def _as_basis(x: Union[BasisIndex, tuple]) -> BasisIndex:
    b = BasisIndex(*x)
    if b.a not in (1, 2):
        raise CaseTableError(f"sheet must be 1 or 2, got {b.a}")
    return b


# ---------------------------------------------------------------------------
# literal basis-pair products


def mul_basis(
    x: Union[BasisIndex, tuple],
    y: Union[BasisIndex, tuple],
    *,
    perturbation: Optional[str] = None,
) -> HeckeElement:
    """Product of two basis functions, straight off the closed table."""
    _check_perturbation(perturbation)
    xb, yb = _as_basis(x), _as_basis(y)
    a, i, j = xb
    b, k, l = yb
    if j * l < 0:
        return HeckeElement()
    qp = Coeff.q_power
    omq = one_minus_qinv()
    rows: list[tuple[tuple[int, int], list[Strip]]] = []

    def pt(c: Coeff, aa: int, m: int, jj: int) -> None:
        if not c.is_zero():
            rows.append(
                ((aa, jj), [Strip(m, m, (ExpPolyTerm(0, IndexPoly.constant(c)),))])
            )

    def geo(c: Coeff, e: int, aa: int, lo: Bound, hi: Bound, jj: int) -> None:
        if lo > hi or c.is_zero():
            return
        rows.append(
            ((aa, jj), [Strip(lo, hi, (ExpPolyTerm(e, IndexPoly.constant(c)),))])
        )

    if a == 1:
        if (j > 0 or (j == 0 and i >= 0)) and (l > 0 or (l == 0 and k >= 0)):
            pt(qp(-1), b, i + k, j + l)
        elif (j < 0 or (j == 0 and i < 0)) and (l < 0 or (l == 0 and k < 0)):
            pt(qp(-1), b, i + k, j + l)
        elif j == 0 and ((i >= 0 and l < 0) or (i < 0 and l > 0)):
            pt(qp(2 * abs(i) - 1), b, i + k, l)
        elif j > 0 and l == 0 and k < 0:
            if b == 1:
                pt(qp(-2 * k - 1), 1, i + k, j)
                geo(omq * qp(i - k - 1), -2, 2, i + k, i - k - 1, j)
            else:
                geo(omq * qp(i - k - 1), -2, 1, i + k + 1, i - k - 1, j)
                pt(qp(-2 * k - 2), 2, i + k, j)
        elif j < 0 and l == 0 and k >= 0:
            if b == 1:
                pt(qp(2 * k - 1), 1, i + k, j)
                geo(omq * qp(-i + k), 2, 2, i - k, i + k - 1, j)
            else:
                geo(omq * qp(-i + k), 2, 1, i - k, i + k, j)
                pt(qp(2 * k), 2, i + k, j)
        elif j == 0 and l == 0 and i >= 0 and k < 0:
            first = 2 * i if perturbation == "flip-1e" else 2 * i - 1
            if b == 1:
                pt(qp(min(first, -2 * k - 1)), 1, i + k, 0)
                geo(omq * qp(i - k - 1), -2, 2, max(i + k, -i - k), i - k - 1, 0)
            else:
                geo(omq * qp(i - k - 1), -2, 1, max(i + k + 1, -i - k), i - k - 1, 0)
                pt(qp(min(2 * i - 1, -2 * k - 2)), 2, i + k, 0)
        elif j == 0 and l == 0 and i < 0 and k >= 0:
            if b == 1:
                pt(qp(min(-2 * i - 1, 2 * k - 1)), 1, i + k, 0)
                geo(omq * qp(-i + k), 2, 2, i - k, min(i + k - 1, -i - k - 1), 0)
            else:
                geo(omq * qp(-i + k), 2, 1, i - k, min(i + k, -i - k - 1), 0)
                pt(qp(min(-2 * i - 1, 2 * k)), 2, i + k, 0)
        else:
            raise CaseTableError(f"no case covers {xb} * {yb}")
    else:
        if j > 0 and l > 0:
            geo(omq * qp(i + k), -2, b, NEG_INF, i + k, j + l)
        elif j < 0 and l < 0:
            geo(omq * qp(-i - k - 1), 2, b, i + k + 1, POS_INF, j + l)
        elif (
            l == 0
            and (
                ((j > 0 or (j == 0 and i >= 0)) and k < 0)
                or ((j < 0 or (j == 0 and i < 0)) and k >= 0)
            )
        ):
            pt(qp(-1), 3 - b, i - k, j)
        elif j > 0 and l == 0 and k >= 0:
            if b == 1:
                geo(omq * qp(i + k), -2, 1, i - k + 1, i + k, j)
                pt(qp(2 * k - 1), 2, i - k, j)
            else:
                pt(qp(2 * k), 1, i - k, j)
                geo(omq * qp(i + k), -2, 2, i - k, i + k, j)
        elif j < 0 and l == 0 and k < 0:
            if b == 1:
                geo(omq * qp(-i - k - 1), 2, 1, i + k + 1, i - k, j)
                pt(qp(-2 * k - 1), 2, i - k, j)
            else:
                pt(qp(-2 * k - 2), 1, i - k, j)
                geo(omq * qp(-i - k - 1), 2, 2, i + k + 1, i - k - 1, j)
        elif j == 0 and ((i >= 0 and l < 0) or (i < 0 and l > 0)):
            pass  # both products vanish
        elif j == 0 and i >= 0 and l > 0:
            geo(omq * qp(i + k), -2, b, -i + k, i + k, l)
        elif j == 0 and i < 0 and l < 0:
            geo(omq * qp(-i - k - 1), 2, b, i + k + 1, -i + k - 1, l)
        elif j == 0 and l == 0 and i >= 0 and k >= 0:
            if b == 1:
                geo(omq * qp(i + k), -2, 1, max(i - k + 1, -i + k), i + k, 0)
                pt(qp(min(2 * i, 2 * k - 1)), 2, i - k, 0)
            else:
                pt(qp(min(2 * i, 2 * k)), 1, i - k, 0)
                geo(omq * qp(i + k), -2, 2, max(i - k, -i + k), i + k, 0)
        elif j == 0 and l == 0 and i < 0 and k < 0:
            if b == 1:
                geo(omq * qp(-i - k - 1), 2, 1, i + k + 1, min(i - k, -i + k - 1), 0)
                pt(qp(min(-2 * i - 2, -2 * k - 1)), 2, i - k, 0)
            else:
                pt(qp(min(-2 * i - 2, -2 * k - 2)), 1, i - k, 0)
                geo(omq * qp(-i - k - 1), 2, 2, i + k + 1, min(-i + k - 1, i - k - 1), 0)
        else:
            raise CaseTableError(f"no case covers {xb} * {yb}")
    return HeckeElement(rows)


# ---------------------------------------------------------------------------
# the strip engine
#
# Working representation: a summand term is s^(ei*i + ek*k + en*n) * P(i,k,n)
# with P a polynomial over Coeff, stored as {(di,dk,dn): Coeff}.

_I, _K, _N = 0, 1, 2

MPoly = dict[tuple[int, int, int], Coeff]
ETerm = tuple[tuple[int, int, int], MPoly]


def _mp_add_into(acc: MPoly, p: MPoly, factor: Optional[Coeff] = None) -> None:
    for key, c in p.items():
        v = c if factor is None else c * factor
        cur = acc.get(key)
        new = v if cur is None else cur + v
        if new.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = new


def _mp_scale(p: MPoly, c: Coeff) -> MPoly:
    if c.is_zero():
        return {}
    return {k: v * c for k, v in p.items()}


def _mp_mul(a: MPoly, b: MPoly) -> MPoly:
    out: MPoly = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            v = ca * cb
            cur = out.get(key)
            new = v if cur is None else cur + v
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new
    return out


def _mp_from_poly(p: IndexPoly, var: int) -> MPoly:
    out: MPoly = {}
    for d, c in enumerate(p.coeffs):
        if not c.is_zero():
            key = [0, 0, 0]
            key[var] = d
            out[tuple(key)] = c
    return out


def _mp_subst(p: MPoly, var: int, lin: dict[int, int], const: int) -> MPoly:
    """Substitute var -> sum(lin[v] * x_v) + const."""
    if not p:
        return {}
    aff: MPoly = {}
    if const:
        aff[(0, 0, 0)] = Coeff.integer(const)
    for v, cv in lin.items():
        if cv:
            key = [0, 0, 0]
            key[v] = 1
            aff[tuple(key)] = Coeff.integer(cv)
    maxd = max(k[var] for k in p)
    pows: list[MPoly] = [{(0, 0, 0): ONE}]
    for _ in range(maxd):
        pows.append(_mp_mul(pows[-1], aff))
    out: MPoly = {}
    for key, c in p.items():
        d = key[var]
        rest = list(key)
        rest[var] = 0
        for k2, c2 in pows[d].items():
            kk = (rest[0] + k2[0], rest[1] + k2[1], rest[2] + k2[2])
            v = c * c2
            cur = out.get(kk)
            new = v if cur is None else cur + v
            if new.is_zero():
                out.pop(kk, None)
            else:
                out[kk] = new
    return out


def _term_subst(term: ETerm, var: int, lin: dict[int, int], const: int) -> ETerm:
    # replaces var by an affine form, moving its s-exponent onto the others
    exps, p = term
    alpha = exps[var]
    new = list(exps)
    new[var] = 0
    for v, cv in lin.items():
        new[v] += alpha * cv
    p2 = _mp_subst(p, var, lin, const)
    if alpha * const:
        p2 = _mp_scale(p2, Coeff.s_power(alpha * const))
    return (tuple(new), p2)


def _merge_eterms(terms: Iterable[ETerm]) -> list[ETerm]:
    acc: dict[tuple[int, int, int], MPoly] = {}
    for exps, p in terms:
        if not p:
            continue
        _mp_add_into(acc.setdefault(exps, {}), p)
    return [(e, p) for e, p in acc.items() if p]


def _antiderivative(term: ETerm, var: int) -> MPoly:
    """R with sum_{v=A..B} P(v) s^(alpha v) = [R s^(alpha v)]_{A-1}^{B}."""
    exps, poly = term
    alpha = exps[var]
    bydeg: dict[int, MPoly] = {}
    for key, c in poly.items():
        rest = list(key)
        d = rest[var]
        rest[var] = 0
        _mp_add_into(bydeg.setdefault(d, {}), {tuple(rest): c})
    deg = max(bydeg) if bydeg else 0
    pc = [bydeg.get(d, {}) for d in range(deg + 1)]
    rho: list[MPoly]
    if alpha != 0:
        u = Coeff.s_power(-alpha)
        inv = ONE / (ONE - u)
        rho = [{} for _ in range(deg + 1)]
        for c in range(deg, -1, -1):
            acc: MPoly = {}
            _mp_add_into(acc, pc[c])
            for d in range(c + 1, deg + 1):
                sgn = 1 if (d - c) % 2 == 0 else -1
                _mp_add_into(acc, rho[d], u * (comb(d, c) * sgn))
            rho[c] = _mp_scale(acc, inv)
    else:
        rho = [{} for _ in range(deg + 2)]
        for c in range(deg, -1, -1):
            acc = {}
            _mp_add_into(acc, pc[c])
            for d in range(c + 2, deg + 2):
                sgn = 1 if (d - c) % 2 == 1 else -1
                _mp_add_into(acc, rho[d], Coeff.integer(-comb(d, c) * sgn))
            rho[c + 1] = _mp_scale(acc, Coeff.rational(1, c + 1))
    out: MPoly = {}
    for d, mp in enumerate(rho):
        for key, c in mp.items():
            kk = list(key)
            kk[var] = d
            out[tuple(kk)] = c
    return out


# bounds on the outer index are affine in n: (slope, offset)

_NBound = tuple[int, int]


def _nb_eval(b: _NBound, n: int) -> int:
    return b[0] * n + b[1]


def _atoms_from_cuts(cuts: set[int]) -> list[tuple[Bound, Bound]]:
    cs = sorted(cuts)
    if not cs:
        return [(NEG_INF, POS_INF)]
    out: list[tuple[Bound, Bound]] = [(NEG_INF, cs[0] - 1)]
    for a, b in zip(cs, cs[1:]):
        if a <= b - 1:
            out.append((a, b - 1))
    out.append((cs[-1], POS_INF))
    return out


def _closed_outer(
    terms: list[ETerm],
    lows: list[_NBound],
    ups: list[_NBound],
    window: tuple[Bound, Bound],
) -> list[tuple[Bound, Bound, list[ETerm]]]:
    """Sum the outer index between affine bounds, piecewise over n."""
    terms = _merge_eterms(terms)
    if not terms:
        return []
    lows = list(dict.fromkeys(lows))
    ups = list(dict.fromkeys(ups))
    if not lows or not ups:
        raise InfiniteSupportError("sum over the outer index has no finite bound")
    ants = [(t[0], _antiderivative(t, _I)) for t in terms]
    cuts: set[int] = set()
    allb = lows + ups
    for p in range(len(allb)):
        g1, d1 = allb[p]
        for r in range(p + 1, len(allb)):
            g2, d2 = allb[r]
            if g1 != g2:
                x = Fraction(d2 - d1, g1 - g2)
                f = x.numerator // x.denominator
                cuts.add(f)
                cuts.add(f + 1)
    out: list[tuple[Bound, Bound, list[ETerm]]] = []
    wlo, whi = window
    for alo, ahi in _atoms_from_cuts(cuts):
        lo = max(alo, wlo)
        hi = min(ahi, whi)
        if lo > hi:
            continue
        sample = int(lo) if lo != NEG_INF else int(hi) if hi != POS_INF else 0
        lb = max(lows, key=lambda b: _nb_eval(b, sample))
        ub = min(ups, key=lambda b: _nb_eval(b, sample))
        if _nb_eval(lb, sample) > _nb_eval(ub, sample):
            continue
        piece_terms: list[ETerm] = []
        for exps, R in ants:
            hi_t = _term_subst((exps, R), _I, {_N: ub[0]}, ub[1])
            lo_t = _term_subst((exps, R), _I, {_N: lb[0]}, lb[1] - 1)
            piece_terms.append(hi_t)
            piece_terms.append((lo_t[0], _mp_scale(lo_t[1], Coeff.integer(-1))))
        merged = _merge_eterms(piece_terms)
        if merged:
            out.append((lo, hi, merged))
    return out


def _eterms_to_strip_terms(terms: list[ETerm]) -> tuple[ExpPolyTerm, ...]:
    parts: list[tuple[int, IndexPoly]] = []
    for exps, p in terms:
        if exps[_I] or exps[_K]:
            raise CaseTableError("unsummed index in output term")
        deg: dict[int, Coeff] = {}
        for key, c in p.items():
            if key[_I] or key[_K]:
                raise CaseTableError("unsummed index in output polynomial")
            deg[key[_N]] = deg.get(key[_N], Coeff()) + c
        width = max(deg) + 1 if deg else 0
        ip = IndexPoly([deg.get(d, Coeff()) for d in range(width)])
        if not ip.is_zero():
            parts.append((exps[_N], ip))
    return merge_terms(parts)


# kernel pieces: the table as data for the strip engine


@dataclass(frozen=True)
class _Pt:
    sheet: int
    tk: int  # output index n = i + tk*k
    ei: int
    ek: int
    en: int
    scalar: Coeff
    nlo: Bound = NEG_INF
    nhi: Bound = POS_INF


@dataclass(frozen=True)
class _Sp:
    sheet: int
    # each constraint: (sense, ci, ck, c0); sense +1 means n >= ci*i+ck*k+c0
    cons: tuple[tuple[int, int, int, int], ...]
    ei: int
    ek: int
    en: int
    scalar: Coeff


def _pieces(
    a: int,
    b: int,
    js: int,
    ls: int,
    isg: int,
    ksg: int,
    perturbation: Optional[str],
) -> tuple:
    """Kernel pieces for one table family, selected by level signs and, at
    level zero, by the index sign of the corresponding factor."""
    qm1 = Coeff.q_power(-1)
    qm2 = Coeff.q_power(-2)
    omq = one_minus_qinv()
    omq_qm1 = omq * qm1
    if a == 1:
        pos_x = js > 0 or (js == 0 and isg > 0)
        neg_x = js < 0 or (js == 0 and isg < 0)
        pos_y = ls > 0 or (ls == 0 and ksg > 0)
        neg_y = ls < 0 or (ls == 0 and ksg < 0)
        if js == 0 and ls == 0:
            if isg > 0 and ksg > 0 or isg < 0 and ksg < 0:
                return (_Pt(b, 1, 0, 0, 0, qm1),)
            if isg > 0:  # k < 0
                first = ONE if perturbation == "flip-1e" else qm1
                if b == 1:
                    return (
                        _Pt(1, 1, 4, 0, 0, first, nhi=0),
                        _Pt(1, 1, 0, -4, 0, qm1, nlo=1),
                        _Sp(2, ((1, 1, 1, 0), (1, -1, -1, 0), (-1, 1, -1, -1)), 2, -2, -2, omq_qm1),
                    )
                return (
                    _Sp(1, ((1, 1, 1, 1), (1, -1, -1, 0), (-1, 1, -1, -1)), 2, -2, -2, omq_qm1),
                    _Pt(2, 1, 4, 0, 0, qm1, nhi=-1),
                    _Pt(2, 1, 0, -4, 0, qm2, nlo=0),
                )
            # i < 0, k >= 0
            if b == 1:
                return (
                    _Pt(1, 1, -4, 0, 0, qm1, nlo=0),
                    _Pt(1, 1, 0, 4, 0, qm1, nhi=-1),
                    _Sp(2, ((1, 1, -1, 0), (-1, 1, 1, -1), (-1, -1, -1, -1)), -2, 2, 2, omq),
                )
            return (
                _Sp(1, ((1, 1, -1, 0), (-1, 1, 1, 0), (-1, -1, -1, -1)), -2, 2, 2, omq),
                _Pt(2, 1, -4, 0, 0, qm1, nlo=0),
                _Pt(2, 1, 0, 4, 0, ONE, nhi=-1),
            )
        if pos_x and pos_y or neg_x and neg_y:
            return (_Pt(b, 1, 0, 0, 0, qm1),)
        if js == 0 and ((isg > 0 and ls < 0) or (isg < 0 and ls > 0)):
            e = 4 if isg > 0 else -4
            return (_Pt(b, 1, e, 0, 0, qm1),)
        if js > 0 and ls == 0 and ksg < 0:
            if b == 1:
                return (
                    _Pt(1, 1, 0, -4, 0, qm1),
                    _Sp(2, ((1, 1, 1, 0), (-1, 1, -1, -1)), 2, -2, -2, omq_qm1),
                )
            return (
                _Sp(1, ((1, 1, 1, 1), (-1, 1, -1, -1)), 2, -2, -2, omq_qm1),
                _Pt(2, 1, 0, -4, 0, qm2),
            )
        if js < 0 and ls == 0 and ksg > 0:
            if b == 1:
                return (
                    _Pt(1, 1, 0, 4, 0, qm1),
                    _Sp(2, ((1, 1, -1, 0), (-1, 1, 1, -1)), -2, 2, 2, omq),
                )
            return (
                _Sp(1, ((1, 1, -1, 0), (-1, 1, 1, 0)), -2, 2, 2, omq),
                _Pt(2, 1, 0, 4, 0, ONE),
            )
        raise CaseTableError("no kernel for sheet-1 signature")
    # a == 2
    if js > 0 and ls > 0:
        return (_Sp(b, ((-1, 1, 1, 0),), 2, 2, -2, omq),)
    if js < 0 and ls < 0:
        return (_Sp(b, ((1, 1, 1, 1),), -2, -2, 2, omq_qm1),)
    pos_x = js > 0 or (js == 0 and isg > 0)
    neg_x = js < 0 or (js == 0 and isg < 0)
    if ls == 0 and ((pos_x and ksg < 0) or (neg_x and ksg > 0)):
        return (_Pt(3 - b, -1, 0, 0, 0, qm1),)
    if js > 0 and ls == 0 and ksg > 0:
        if b == 1:
            return (
                _Sp(1, ((1, 1, -1, 1), (-1, 1, 1, 0)), 2, 2, -2, omq),
                _Pt(2, -1, 0, 4, 0, qm1),
            )
        return (
            _Pt(1, -1, 0, 4, 0, ONE),
            _Sp(2, ((1, 1, -1, 0), (-1, 1, 1, 0)), 2, 2, -2, omq),
        )
    if js < 0 and ls == 0 and ksg < 0:
        if b == 1:
            return (
                _Sp(1, ((1, 1, 1, 1), (-1, 1, -1, 0)), -2, -2, 2, omq_qm1),
                _Pt(2, -1, 0, -4, 0, qm1),
            )
        return (
            _Pt(1, -1, 0, -4, 0, qm2),
            _Sp(2, ((1, 1, 1, 1), (-1, 1, -1, -1)), -2, -2, 2, omq_qm1),
        )
    if js == 0 and ((isg > 0 and ls < 0) or (isg < 0 and ls > 0)):
        return ()
    if js == 0 and isg > 0 and ls > 0:
        return (_Sp(b, ((1, -1, 1, 0), (-1, 1, 1, 0)), 2, 2, -2, omq),)
    if js == 0 and isg < 0 and ls < 0:
        return (_Sp(b, ((1, 1, 1, 1), (-1, -1, 1, -1)), -2, -2, 2, omq_qm1),)
    if js == 0 and ls == 0 and isg > 0 and ksg > 0:
        if b == 1:
            return (
                _Sp(1, ((1, 1, -1, 1), (1, -1, 1, 0), (-1, 1, 1, 0)), 2, 2, -2, omq),
                _Pt(2, -1, 4, 0, 0, ONE, nhi=-1),
                _Pt(2, -1, 0, 4, 0, qm1, nlo=0),
            )
        return (
            _Pt(1, -1, 4, 0, 0, ONE, nhi=0),
            _Pt(1, -1, 0, 4, 0, ONE, nlo=1),
            _Sp(2, ((1, 1, -1, 0), (1, -1, 1, 0), (-1, 1, 1, 0)), 2, 2, -2, omq),
        )
    if js == 0 and ls == 0 and isg < 0 and ksg < 0:
        if b == 1:
            return (
                _Sp(1, ((1, 1, 1, 1), (-1, 1, -1, 0), (-1, -1, 1, -1)), -2, -2, 2, omq_qm1),
                _Pt(2, -1, -4, 0, 0, qm2, nlo=0),
                _Pt(2, -1, 0, -4, 0, qm1, nhi=-1),
            )
        return (
            _Pt(1, -1, -4, 0, 0, qm2, nlo=0),
            _Pt(1, -1, 0, -4, 0, qm2, nhi=-1),
            _Sp(2, ((1, 1, 1, 1), (-1, -1, 1, -1), (-1, 1, -1, -1)), -2, -2, 2, omq_qm1),
        )
    raise CaseTableError("no kernel for sheet-2 signature")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _norm_cond(di: int, dn: int, d0: int):
    """Turn di*i + dn*n + d0 >= 0 (di != 0) into an affine bound on i."""
    if abs(di) > 2 or (abs(di) == 2 and dn % 2):
        raise CaseTableError("bound comparison outside the supported geometry")
    if di > 0:
        if di == 1:
            return ("ilo", (-dn, -d0))
        return ("ilo", (-dn // 2, _ceil_div(-d0, 2)))
    if di == -1:
        return ("ihi", (dn, d0))
    return ("ihi", (dn // 2, d0 // 2))


def _apply_conds(conds):
    """Split branch conditions into i-bounds and an n-window; None if absurd."""
    lows: list[_NBound] = []
    ups: list[_NBound] = []
    wlo: Bound = NEG_INF
    whi: Bound = POS_INF
    for di, dn, d0 in conds:
        if di == 0:
            if dn == 0:
                if d0 < 0:
                    return None
                continue
            if dn > 0:
                wlo = max(wlo, _ceil_div(-d0, dn))
            else:
                whi = min(whi, d0 // (-dn))
            continue
        kind, val = _norm_cond(di, dn, d0)
        if kind == "ilo":
            lows.append(val)
        else:
            ups.append(val)
    if wlo > whi:
        return None
    return lows, ups, (wlo, whi)


def _sum_point(
    piece: _Pt, sx: Strip, sy: Strip, out: list
) -> None:
    terms: list[ETerm] = []
    for ex, px in sx.terms:
        for ey, py in sy.terms:
            exps = (ex + piece.ei, ey + piece.ek, piece.en)
            poly = _mp_mul(_mp_from_poly(px, _I), _mp_from_poly(py, _K))
            poly = _mp_scale(poly, piece.scalar)
            terms.append((exps, poly))
    lin = {_I: -piece.tk, _N: piece.tk}
    terms = [_term_subst(t, _K, lin, 0) for t in terms]
    lows: list[_NBound] = []
    ups: list[_NBound] = []
    if isinstance(sx.lo, int):
        lows.append((0, sx.lo))
    if isinstance(sx.hi, int):
        ups.append((0, sx.hi))
    if piece.tk == 1:
        # k = n - i in [ylo, yhi]  =>  n - yhi <= i <= n - ylo
        if isinstance(sy.hi, int):
            lows.append((1, -sy.hi))
        if isinstance(sy.lo, int):
            ups.append((1, -sy.lo))
    else:
        # k = i - n in [ylo, yhi]  =>  n + ylo <= i <= n + yhi
        if isinstance(sy.lo, int):
            lows.append((1, sy.lo))
        if isinstance(sy.hi, int):
            ups.append((1, sy.hi))
    for lo, hi, ts in _closed_outer(terms, lows, ups, (piece.nlo, piece.nhi)):
        st = _eterms_to_strip_terms(ts)
        if st:
            out.append((piece.sheet, lo, hi, st))


def _sum_span(
    piece: _Sp, sx: Strip, sy: Strip, out: list
) -> None:
    base: list[ETerm] = []
    for ex, px in sx.terms:
        for ey, py in sy.terms:
            exps = (ex + piece.ei, ey + piece.ek, piece.en)
            poly = _mp_mul(_mp_from_poly(px, _I), _mp_from_poly(py, _K))
            poly = _mp_scale(poly, piece.scalar)
            base.append((exps, poly))
    base = _merge_eterms(base)
    if not base:
        return
    # bounds on k, affine in (i, n): stored as (ci, cn, c0)
    klows: list[tuple[int, int, int]] = []
    kups: list[tuple[int, int, int]] = []
    if isinstance(sy.lo, int):
        klows.append((0, 0, sy.lo))
    if isinstance(sy.hi, int):
        kups.append((0, 0, sy.hi))
    for sense, ci, ck, c0 in piece.cons:
        if ck == 0:
            raise CaseTableError("span constraint must involve the inner index")
        if (sense, ck) in ((1, 1), (-1, -1)):
            # k bounded above
            if ck == 1:
                kups.append((-ci, 1, -c0))
            else:
                kups.append((ci, -1, c0))
        else:
            if ck == 1:
                klows.append((-ci, 1, -c0))
            else:
                klows.append((ci, -1, c0))
    klows = list(dict.fromkeys(klows))
    kups = list(dict.fromkeys(kups))
    if not klows or not kups:
        raise InfiniteSupportError("sum over the inner index has no finite bound")
    ants = [(t[0], _antiderivative(t, _K)) for t in base]
    for p, la in enumerate(klows):
        for r, ub in enumerate(kups):
            conds: list[tuple[int, int, int]] = []
            for t, other in enumerate(klows):
                if t == p:
                    continue
                d = (la[0] - other[0], la[1] - other[1], la[2] - other[2])
                if t < p:
                    d = (d[0], d[1], d[2] - 1)  # strictly beat earlier lows
                conds.append(d)
            for t, other in enumerate(kups):
                if t == r:
                    continue
                d = (other[0] - ub[0], other[1] - ub[1], other[2] - ub[2])
                if t < r:
                    d = (d[0], d[1], d[2] - 1)
                conds.append(d)
            conds.append((ub[0] - la[0], ub[1] - la[1], ub[2] - la[2]))
            applied = _apply_conds(conds)
            if applied is None:
                continue
            ilows, iups, window = applied
            if isinstance(sx.lo, int):
                ilows.append((0, sx.lo))
            if isinstance(sx.hi, int):
                iups.append((0, sx.hi))
            branch_terms: list[ETerm] = []
            for exps, R in ants:
                hi_t = _term_subst(
                    (exps, R), _K, {_I: ub[0], _N: ub[1]}, ub[2]
                )
                lo_t = _term_subst(
                    (exps, R), _K, {_I: la[0], _N: la[1]}, la[2] - 1
                )
                branch_terms.append(hi_t)
                branch_terms.append((lo_t[0], _mp_scale(lo_t[1], Coeff.integer(-1))))
            branch_terms = _merge_eterms(branch_terms)
            if not branch_terms:
                continue
            for lo, hi, ts in _closed_outer(branch_terms, ilows, iups, window):
                st = _eterms_to_strip_terms(ts)
                if st:
                    out.append((piece.sheet, lo, hi, st))


def _sign_pieces_of_strip(s: Strip, split: bool):
    """Yield (strip, sign) with sign +1 on [0, inf) and -1 on (-inf, -1]."""
    if not split:
        yield s, 0
        return
    if s.lo <= -1:
        yield Strip(s.lo, min(s.hi, -1), s.terms), -1
    if s.hi >= 0:
        yield Strip(max(s.lo, 0), s.hi, s.terms), 1


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def mul(
    x: HeckeElement, y: HeckeElement, *, perturbation: Optional[str] = None
) -> HeckeElement:
    """Convolution product, extended bilinearly over all strip rows."""
    _check_perturbation(perturbation)
    contrib: dict[tuple[int, int], list[Strip]] = {}
    for kx, rx in x.rows:
        for ky, ry in y.rows:
            j, l = kx.j, ky.j
            if j * l < 0:
                continue
            for sx0 in rx.strips:
                for sx, isg in _sign_pieces_of_strip(sx0, j == 0):
                    for sy0 in ry.strips:
                        for sy, ksg in _sign_pieces_of_strip(sy0, l == 0):
                            pieces = _pieces(
                                kx.a, ky.a, _sgn(j), _sgn(l), isg, ksg, perturbation
                            )
                            emitted: list = []
                            for piece in pieces:
                                if isinstance(piece, _Pt):
                                    _sum_point(piece, sx, sy, emitted)
                                else:
                                    _sum_span(piece, sx, sy, emitted)
                            for sheet, lo, hi, st in emitted:
                                contrib.setdefault((sheet, j + l), []).append(
                                    Strip(lo, hi, st)
                                )
    return HeckeElement(contrib)


# ---------------------------------------------------------------------------
# independent per-coefficient path


@lru_cache(maxsize=65536)
def _basis_product(xt: BasisIndex, yt: BasisIndex) -> HeckeElement:
    return mul_basis(xt, yt)


def _pair_windows(j: int, l: int, sx: Strip, sy: Strip, n: int):
    """Contributing (i, k) ranges for one output index; complete by the
    support windows of the table (point targets i +- k, spreads <= |other|+1,
    rays toward the level sign)."""
    if j > 0 and l > 0:
        ilo, ihi = max(sx.lo, n - sy.hi), sx.hi
        for i in range(int(ilo), int(ihi) + 1):
            klo, khi = max(sy.lo, n - sx.hi), sy.hi
            for k in range(int(klo), int(khi) + 1):
                yield i, k
    elif j < 0 and l < 0:
        ilo, ihi = sx.lo, min(sx.hi, n - sy.lo)
        for i in range(int(ilo), int(ihi) + 1):
            klo, khi = sy.lo, min(sy.hi, n - sx.lo)
            for k in range(int(klo), int(khi) + 1):
                yield i, k
    elif j == 0:
        for i in range(int(sx.lo), int(sx.hi) + 1):
            w = abs(i) + abs(n) + 2
            klo, khi = max(sy.lo, -w), min(sy.hi, w)
            for k in range(int(klo), int(khi) + 1):
                yield i, k
    else:  # l == 0
        for k in range(int(sy.lo), int(sy.hi) + 1):
            w = abs(k) + abs(n) + 2
            ilo, ihi = max(sx.lo, -w), min(sx.hi, w)
            for i in range(int(ilo), int(ihi) + 1):
                yield i, k


def coeff_of_product(
    x: HeckeElement, y: HeckeElement, target: Union[BasisIndex, tuple]
) -> Coeff:
    """One coefficient of x*y, summed pointwise over contributing basis pairs."""
    t = _as_basis(target)
    total = Coeff()
    for kx, rx in x.rows:
        for ky, ry in y.rows:
            j, l = kx.j, ky.j
            if j + l != t.j or j * l < 0:
                continue
            for sx in rx.strips:
                for sy in ry.strips:
                    for i, k in _pair_windows(j, l, sx, sy, t.i):
                        w = _basis_product(
                            BasisIndex(kx.a, i, j), BasisIndex(ky.a, k, l)
                        ).coefficient_at((t.a, t.j), t.i)
                        if w.is_zero():
                            continue
                        cx = sx.value_at(i)
                        if cx.is_zero():
                            continue
                        cy = sy.value_at(k)
                        if cy.is_zero():
                            continue
                        total = total + cx * cy * w
    return total
