"""Polynomials in X over exact rational functions or truncated series.

Coefficients are homogeneous per polynomial (all :class:`RatFunc` or all
:class:`PuiseuxSeries`); the ``domain`` marker records which.  Construction
trims decidably-zero leading coefficients and fails with PrecisionExhausted
if the leading coefficient is an unknown-zero, so a built polynomial always
has a decidably nonzero leading coefficient (or is the zero polynomial).

The root-data tool of the workbench is :meth:`PolyX.newton_polygon`: the
lower convex hull of (i, val C_i) after recentering, whose slopes give the
exact multiset of valuations of center-to-root differences.  Recentering
uses the integer binomial coefficients of the Hasse derivative, so it is
valid in every characteristic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ParseError, PrecisionExhausted, WorkbenchError, ZeroPolynomial
from .field import BaseField
from .groupval import GroupVal
from .series import DEFAULT_PREC, PuiseuxSeries, RatFunc, coerce

RATFUNC = "ratfunc"
SERIES = "series"


def elt_is_decidably_zero(c) -> bool:
    if isinstance(c, RatFunc):
        return c.is_zero()
    return c.is_exact_zero()


def elt_is_unknown_zero(c) -> bool:
    return isinstance(c, PuiseuxSeries) and not c.coeffs and c.prec is not None


def elt_zero(field: BaseField, domain: str):
    return RatFunc.zero(field) if domain == RATFUNC else PuiseuxSeries.zero(field)


def elt_val(c) -> GroupVal:
    """Exact valuation; raises PrecisionExhausted for unknown-zero series."""
    return c.val()


def elt_as_series(c, prec=None) -> PuiseuxSeries:
    if isinstance(c, PuiseuxSeries):
        return c
    if c.is_polynomial():
        # exact embedding: a polynomial in t is exactly known
        return PuiseuxSeries.from_terms(c.field, {i: x for i, x in enumerate(c.num)})
    return coerce(c, DEFAULT_PREC if prec is None else prec)


def elt_scalar_mul(c, s):
    """Multiply a coefficient by a base-field scalar."""
    if isinstance(c, RatFunc):
        return c * RatFunc.constant(c.field, s)
    return c.scalar_mul(s)


class PolyX:
    """A polynomial in X with RatFunc or PuiseuxSeries coefficients."""

    __slots__ = ("field", "domain", "coeffs")

    def __init__(self, field: BaseField, domain: str, coeffs):
        if domain not in (RATFUNC, SERIES):
            raise WorkbenchError(f"unknown coefficient domain {domain!r}")
        coeffs = list(coeffs)
        while coeffs and elt_is_decidably_zero(coeffs[-1]):
            coeffs.pop()
        if coeffs and elt_is_unknown_zero(coeffs[-1]):
            raise PrecisionExhausted(
                "leading coefficient is not decidably nonzero at this precision")
        self.field = field
        self.domain = domain
        self.coeffs = coeffs

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(field: BaseField, domain: str = RATFUNC) -> "PolyX":
        return PolyX(field, domain, [])

    @staticmethod
    def from_ratfuncs(field: BaseField, coeffs) -> "PolyX":
        return PolyX(field, RATFUNC, coeffs)

    @staticmethod
    def from_series(field: BaseField, coeffs) -> "PolyX":
        return PolyX(field, SERIES, coeffs)

    @staticmethod
    def x_power(field: BaseField, k: int, domain: str = RATFUNC) -> "PolyX":
        one = RatFunc.one(field) if domain == RATFUNC else PuiseuxSeries.one(field)
        return PolyX(field, domain, [elt_zero(field, domain)] * k + [one])

    # -- structure ------------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return elt_zero(self.field, self.domain)

    def is_monic(self) -> bool:
        if self.is_zero():
            return False
        c = self.coeffs[-1]
        if isinstance(c, RatFunc):
            return c == RatFunc.one(self.field)
        return c.ram == 1 and c.coeffs == {0: self.field.one()}

    def to_series(self, prec=None) -> "PolyX":
        if self.domain == SERIES:
            return self
        return PolyX(self.field, SERIES, [elt_as_series(c, prec) for c in self.coeffs])

    # -- arithmetic -----------------------------------------------------------

    def _unify(self, other: "PolyX"):
        if self.field != other.field:
            raise WorkbenchError("base field mismatch")
        if self.domain == other.domain:
            return self, other
        return self.to_series(), other.to_series()

    def __add__(self, other: "PolyX") -> "PolyX":
        a, b = self._unify(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return PolyX(a.field, a.domain, [a.coeff(i) + b.coeff(i) for i in range(n)])

    def __neg__(self):
        return PolyX(self.field, self.domain, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "PolyX") -> "PolyX":
        a, b = self._unify(other)
        if a.is_zero() or b.is_zero():
            return PolyX.zero(a.field, a.domain)
        out = [elt_zero(a.field, a.domain)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                out[i + j] = out[i + j] + x * y
        return PolyX(a.field, a.domain, out)

    def scale(self, c) -> "PolyX":
        """Multiply every coefficient by the coefficient-domain element c."""
        return PolyX(self.field, self.domain, [x * c for x in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, PolyX):
            return NotImplemented
        return (self.field == other.field and self.domain == other.domain
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.domain, tuple(self.coeffs)))

    # -- evaluation and recentering ------------------------------------------------

    def evaluate(self, a):
        """Horner evaluation; the point may be RatFunc or PuiseuxSeries."""
        want_series = isinstance(a, PuiseuxSeries) or self.domain == SERIES
        if want_series:
            a = elt_as_series(a) if isinstance(a, RatFunc) else a
            poly = self.to_series(a.prec)
            acc = PuiseuxSeries.zero(self.field)
        else:
            poly = self
            acc = RatFunc.zero(self.field)
        for c in reversed(poly.coeffs):
            acc = acc * a + c
        return acc

    def recenter_hasse(self, a) -> list:
        """Coefficients C_i with f(X) = sum C_i (X - a)^i.

        Computed by the binomial (Hasse-derivative) formula, valid in every
        characteristic; exact over RatFunc, precision-tracked over series.
        """
        want_series = isinstance(a, PuiseuxSeries) or self.domain == SERIES
        if want_series:
            a = elt_as_series(a) if isinstance(a, RatFunc) else a
            poly = self.to_series(a.prec)
        else:
            poly = self
        n = poly.degree()
        if n < 0:
            return []
        powers = [None] * (n + 1)
        if want_series:
            powers[0] = PuiseuxSeries.one(self.field)
        else:
            powers[0] = RatFunc.one(self.field)
        for d in range(1, n + 1):
            powers[d] = powers[d - 1] * a
        out = []
        for i in range(n + 1):
            acc = poly.coeffs[i]
            for j in range(i + 1, n + 1):
                b = self.field.coerce(math.comb(j, i))
                if self.field.is_zero(b):
                    continue
                acc = acc + elt_scalar_mul(poly.coeffs[j] * powers[j - i], b)
            out.append(acc)
        return out

    # -- division ---------------------------------------------------------------

    def divmod_monic(self, Q: "PolyX"):
        """(quotient, remainder) for monic Q; works in both domains."""
        if not Q.is_monic():
            raise WorkbenchError("divisor must be monic")
        a, Q = self._unify(Q)
        dq = Q.degree()
        if a.degree() < dq:
            return PolyX.zero(a.field, a.domain), a
        r = list(a.coeffs)
        qlen = a.degree() - dq + 1
        q = [elt_zero(a.field, a.domain)] * qlen
        for i in range(qlen - 1, -1, -1):
            c = r[i + dq]
            q[i] = c
            if elt_is_decidably_zero(c):
                continue
            for j in range(dq + 1):
                r[i + j] = r[i + j] - c * Q.coeffs[j]
            r[i + dq] = elt_zero(a.field, a.domain)
        return PolyX(a.field, a.domain, q), PolyX(a.field, a.domain, r[:dq])

    def qadic_expand(self, Q: "PolyX") -> list:
        """Digits f_i with f = sum f_i Q^i and deg f_i < deg Q."""
        if not Q.is_monic() or Q.degree() < 1:
            raise WorkbenchError("Q must be monic of degree >= 1")
        digits = []
        rest = self
        while not rest.is_zero():
            rest, rem = rest.divmod_monic(Q)
            digits.append(rem)
        if not digits:
            digits.append(PolyX.zero(self.field, self.domain))
        return digits

    def monic_part(self):
        """(leading unit, monic polynomial) with f = unit * monic."""
        lead = self.leading()
        if isinstance(lead, RatFunc):
            inv = RatFunc.one(self.field) / lead
        else:
            from .series import invert
            inv = invert(lead)
        return lead, self.scale(inv)

    # -- Newton polygon ------------------------------------------------------------

    def newton_polygon(self, center=None) -> list:
        """Root-difference valuations of f relative to ``center``.

        Returns [(slope, multiplicity), ...] with slopes in decreasing order;
        slope s with multiplicity m means exactly m roots z of f satisfy
        val(center - z) = s.  Exact roots at the center give slope PosInf.
        Raises PrecisionExhausted when a hull-determining coefficient
        valuation is undecidable at the available precision.
        """
        if self.is_zero():
            raise ZeroPolynomial("Newton polygon of the zero polynomial")
        if center is None:
            C = list(self.coeffs)
        else:
            C = self.recenter_hasse(center)
        n = len(C) - 1
        if n == 0:
            return []
        # leading zeros (exact roots at the center)
        k = 0
        while k < n and elt_is_decidably_zero(C[k]):
            k += 1
        if elt_is_unknown_zero(C[k]):
            raise PrecisionExhausted(
                f"coefficient {k} of the recentered polynomial is undecidable")
        known, unknown = [], []
        for i in range(k, n + 1):
            c = C[i]
            if elt_is_decidably_zero(c):
                continue
            if elt_is_unknown_zero(c):
                unknown.append((i, Fraction(c.prec)))
            else:
                known.append((i, elt_val(c).q))
        hull = _lower_hull(known)
        # undecidable points must provably lie on or above the hull
        for i, lb in unknown:
            if lb < _hull_height(hull, i):
                raise PrecisionExhausted(
                    f"coefficient {i} (known only to O(t^{lb})) may cut the Newton polygon")
        out = []
        if k > 0:
            out.append((GroupVal.posinf(), k))
        for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
            out.append((GroupVal.fin(Fraction(v1 - v2, i2 - i1)), i2 - i1))
        return out

    # -- text -----------------------------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeff(i)
            if elt_is_decidably_zero(c):
                continue
            cs = c.to_text()
            xs = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not xs:
                parts.append(f"[{cs}]")
            elif cs == "1":
                parts.append(xs)
            else:
                parts.append(f"[{cs}]*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyX({self.to_text()})"


def _lower_hull(points):
    """Lower convex hull of (i, v) points sorted by i."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _hull_height(hull, x):
    """Height of the hull's lower boundary at abscissa x (inf outside)."""
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= x <= x2:
            return y1 + Fraction(y2 - y1, x2 - x1) * (x - x1)
    return hull[0][1] if hull and x <= hull[0][0] else Fraction(-1) * 10**18


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_XPART_RE = re.compile(r"(?:^|\*)\s*X(?:\^(\d+))?\s*$")


def _split_poly_terms(text):
    """Top-level +/- split that respects [...] and (...)."""
    terms, depth, cur, sign = [], 0, "", 1
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                terms.append((sign, cur))
                cur, sign = "", (1 if ch == "+" else -1)
            else:
                sign *= 1 if ch == "+" else -1
            continue
        cur += ch
    if cur.strip():
        terms.append((sign, cur))
    return terms


def polyx_from_text(field: BaseField, text: str, domain: str = RATFUNC, prec=None) -> PolyX:
    """Parse "t*X^2 + X + t^3" or "[1 + t]*X^2 + [t]*X + [2]".

    Bracketed coefficients are parsed in the requested domain ("ratfunc" or
    "series"); unbracketed factors must be rational scalars or t-monomials.
    """
    text = text.strip()
    if text == "0" or not text:
        return PolyX.zero(field, domain)
    terms = {}
    for sign, body in _split_poly_terms(text):
        body = body.strip()
        m = _XPART_RE.search(body)
        if m:
            k = int(m.group(1)) if m.group(1) else 1
            coef_body = body[: m.start()].strip()
        else:
            k, coef_body = 0, body
        if coef_body.startswith("[") and coef_body.endswith("]"):
            inner = coef_body[1:-1]
            if domain == SERIES:
                c = PuiseuxSeries.from_text(field, inner)
                if c.prec is None and prec is not None:
                    c = c.truncate(prec)
            else:
                c = RatFunc.from_text(field, inner)
        elif not coef_body:
            c = RatFunc.one(field) if domain == RATFUNC else PuiseuxSeries.one(field)
        else:
            # plain factor: rational scalar and/or t-power products
            c = RatFunc.one(field) if domain == RATFUNC else PuiseuxSeries.one(field)
            for factor in coef_body.split("*"):
                factor = factor.strip()
                if not factor:
                    continue
                exp, sc = _parse_simple_factor(field, factor)
                if domain == RATFUNC:
                    if exp.denominator != 1:
                        raise ParseError(f"fractional t-exponent needs series domain: {factor!r}")
                    c = c * RatFunc.t_power(field, int(exp)) * RatFunc.constant(field, sc)
                else:
                    c = c.shift(exp).scalar_mul(sc)
        if sign < 0:
            c = -c
        terms[k] = terms[k] + c if k in terms else c
    deg = max(terms)
    coeffs = [terms.get(i, elt_zero(field, domain)) for i in range(deg + 1)]
    return PolyX(field, domain, coeffs)


def _parse_simple_factor(field, factor):
    from .series import _parse_term
    return _parse_term(field, 1, factor)
