"""Algebraic elements over K = k(t) with explicit certificates.

An :class:`AlgElement` bundles a truncated Puiseux expansion with an optional
monic polynomial certificate.  Nothing here infers irreducibility: the
certificate records a degree upper bound, and a separate flag says whether
the caller certified irreducibility.  Degree queries, conjugation twists and
Krasner constants all refuse to answer rather than guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NoRootOfUnity,
    NotARoot,
    PrecisionExhausted,
    Uncertified,
    WorkbenchError,
)
from .field import BaseField
from .groupval import GroupVal
from .polyx import RATFUNC, PolyX
from .series import DEFAULT_PREC, PuiseuxSeries, RatFunc


class AlgElement:
    """A series expansion plus an optional monic polynomial certificate."""

    __slots__ = ("expansion", "minpoly", "irreducible_certified")

    def __init__(self, expansion: PuiseuxSeries, minpoly: Optional[PolyX] = None,
                 irreducible_certified: bool = False):
        self.expansion = expansion
        self.minpoly = minpoly
        self.irreducible_certified = irreducible_certified

    @property
    def field(self) -> BaseField:
        return self.expansion.field

    @property
    def ram(self) -> int:
        return self.expansion.ram

    def __repr__(self):
        tag = ""
        if self.minpoly is not None:
            tag = f", minpoly {self.minpoly.to_text()}"
            if self.irreducible_certified:
                tag += " (irreducible)"
        return f"AlgElement({self.expansion.to_text()}{tag})"

    def degree(self) -> int:
        """Certified degree over K.

        Two routes: a certified-irreducible minimal polynomial, or pure
        ramification (the expansion needs t^{1/e} and k has a primitive
        e-th root of unity, so X^e - u is irreducible territory at desk
        scale).  Anything else refuses.
        """
        if self.minpoly is not None and self.irreducible_certified:
            return self.minpoly.degree()
        e = self.expansion.ram
        if e > 1 and self.field.root_of_unity(e) is not None:
            return e
        raise Uncertified("no certified minimal polynomial and no pure-ramification route")


def attach_minpoly(s: PuiseuxSeries, Q: PolyX, irreducible: bool = False) -> AlgElement:
    """Certify that s is a root of the monic polynomial Q (up to precision).

    The validation evaluates Q at s; a decidable nonzero valuation of the
    result refutes the certificate, while an evaluation indistinguishable
    from zero at the available precision certifies it.
    """
    if Q.domain != RATFUNC or not Q.is_monic():
        raise WorkbenchError("certificate must be a monic polynomial over K")
    value = Q.evaluate(s)
    if isinstance(value, PuiseuxSeries):
        if value.coeffs:
            raise NotARoot(
                f"Q(s) has valuation {value.val().to_text()}, decidably nonzero")
    else:
        if not value.is_zero():
            raise NotARoot(f"Q(s) = {value.to_text()} is a nonzero element of K")
    return AlgElement(s, Q, irreducible_certified=irreducible)


def galois_twist(a: AlgElement, m: int) -> AlgElement:
    """The conjugate sending t^{1/e} to zeta_e^m t^{1/e}.

    Multiplies the coefficient of t^{n/e} by zeta^{nm}; this is a
    valuation-preserving automorphism of the ramified tower, so the twist
    keeps the same certificate.
    """
    s = a.expansion
    e = s.ram
    zeta = s.field.root_of_unity(e)
    if zeta is None:
        raise NoRootOfUnity(f"base field {s.field!r} has no primitive root of unity of order {e}")
    f = s.field
    coeffs = {n: f.mul(c, f.pow(zeta, (n * m) % e)) for n, c in s.coeffs.items()}
    twisted = PuiseuxSeries(f, e, coeffs, s.prec)
    return AlgElement(twisted, a.minpoly, a.irreducible_certified)


def artin_schreier_translate(a: AlgElement, c) -> AlgElement:
    """The conjugate a + c for a certified Artin-Schreier certificate.

    Valid when the certificate has the shape X^p - X - u with p = char k:
    the roots differ by the prime-field constants.
    """
    f = a.field
    p = f.char
    if p == 0 or a.minpoly is None or not _is_artin_schreier(a.minpoly, p):
        raise Uncertified("translate conjugation needs an X^p - X - u certificate")
    shifted = a.expansion + PuiseuxSeries.constant(f, c)
    return AlgElement(shifted, a.minpoly, a.irreducible_certified)


def _is_artin_schreier(Q: PolyX, p: int) -> bool:
    if Q.degree() != p:
        return False
    f = Q.field
    mid = all(Q.coeff(i).is_zero() for i in range(2, p))
    return mid and Q.coeff(1) == -RatFunc.one(f)


def conjugates(a: AlgElement) -> list:
    """All conjugates reachable by the supported twists, as expansions.

    Pure-ramification elements give the e monomial twists; Artin-Schreier
    certified elements give the p prime-field translates.
    """
    f = a.field
    e = a.expansion.ram
    if f.char > 0 and a.minpoly is not None and _is_artin_schreier(a.minpoly, f.char):
        return [artin_schreier_translate(a, c).expansion for c in range(f.char)]
    if e > 1 and f.root_of_unity(e) is not None:
        return [galois_twist(a, m).expansion for m in range(e)]
    raise Uncertified("conjugates not enumerable by the supported twist families")


def krasner_constant(a: AlgElement) -> GroupVal:
    """max v(sigma a - tau a) over distinct conjugates.

    Prefers explicit conjugate enumeration; falls back to the shifted-
    polygon route (slopes of the certificate recentered at a are exactly
    the v(sigma a - a)).
    """
    deg = a.degree()
    if deg < 2:
        raise Uncertified("the Krasner constant needs an element of degree >= 2")
    try:
        conj = conjugates(a)
    except Uncertified:
        conj = None
    if conj is not None:
        best = None
        for x, y in itertools.combinations(conj, 2):
            d = x - y
            if not d.coeffs:
                if d.prec is None:
                    continue  # exact coincidence; not a distinct pair
                raise PrecisionExhausted(
                    "conjugate difference indistinguishable from 0 at this precision")
            v = d.val()
            if best is None or v > best:
                best = v
        if best is None:
            raise Uncertified("no distinct conjugate pairs found")
        return best
    # polygon route: slopes at center a are the v(sigma a - a)
    if a.minpoly is None:
        raise Uncertified("no conjugates and no certificate available")
    slopes = [s for s, _ in a.minpoly.newton_polygon(a.expansion) if not s.is_inf]
    if not slopes:
        raise Uncertified("all certificate roots coincide with the element")
    return max(slopes)


# ---------------------------------------------------------------------------
# roots in the completion
# ---------------------------------------------------------------------------

@dataclass
class Linear:
    """A ram-1 root of the certificate was found: the element lies in k((t))."""
    root: PuiseuxSeries


@dataclass
class NoRootFound:
    """No ram-1 root detected within the budget; a desk-scale verdict."""
    budget: Fraction


def minpoly_over_completion(a: AlgElement, budget) -> object:
    """Search for a root of a's certificate inside k((t)) by digit recursion.

    At each step the Newton polygon of the certificate recentered at the
    partial sum proposes candidate next exponents; only integer exponents
    are admissible (the root must have ramification 1), and each candidate
    coefficient must solve the residue equation of its polygon segment.
    When a's own expansion has ramification 1 it guides the branch choice.
    Returns Linear(root) or NoRootFound(budget).
    """
    if a.minpoly is None:
        raise Uncertified("root search needs a polynomial certificate")
    budget = Fraction(budget)
    guide = a.expansion if a.expansion.ram == 1 else None
    f = a.field
    Q = a.minpoly.to_series(budget + 8)
    x = PuiseuxSeries.zero(f)
    last = Fraction(-1) * 10**9
    while True:
        polygon = Q.newton_polygon(x)
        if any(s.is_inf for s, _ in polygon):
            return Linear(x)  # exact root
        candidates = [s.q for s, _ in polygon if not s.is_inf and s.q > last]
        if guide is not None:
            diff = guide - x
            if not diff.coeffs:
                # x matches the guide through its whole known support
                cap = min(budget, diff.prec) if diff.prec is not None else budget
                return Linear(PuiseuxSeries(f, x.ram, dict(x.coeffs), cap))
            candidates = [mu for mu in candidates if mu == diff.val().q]
        solved = False
        for mu in sorted(candidates, reverse=True):
            if mu.denominator != 1:
                continue
            if mu >= budget:
                return Linear(PuiseuxSeries(f, x.ram, dict(x.coeffs), budget))
            for c in _residue_roots(f, _residue_equation(Q, x, mu)):
                if guide is not None and c != guide.coeff_at(mu):
                    continue
                x = x + PuiseuxSeries.from_terms(f, {mu: c})
                last = mu
                solved = True
                break
            if solved:
                break
        if not solved:
            return NoRootFound(budget)


def _residue_equation(Q: PolyX, x: PuiseuxSeries, mu: Fraction) -> list:
    """Coefficients of the residue polynomial phi(c) for slope mu at center x.

    phi(c) = sum over the polygon points on the support line of the leading
    scalar of C_i times c^i; its nonzero roots are the admissible next
    digits.
    """
    C = Q.recenter_hasse(x)
    f = Q.field
    height = None
    vals = []
    for i, ci in enumerate(C):
        if isinstance(ci, PuiseuxSeries) and not ci.coeffs:
            vals.append(None)
            continue
        v = ci.val()
        if v.is_inf:
            vals.append(None)
            continue
        h = v.q + i * mu
        vals.append((h, ci))
        if height is None or h < height:
            height = h
    phi = [f.zero()] * len(C)
    for i, entry in enumerate(vals):
        if entry is None:
            continue
        h, ci = entry
        if h == height:
            lead = ci.coeff_at(ci.val().q) if isinstance(ci, PuiseuxSeries) else _ratfunc_lead(ci)
            phi[i] = lead
    while phi and f.is_zero(phi[-1]):
        phi.pop()
    return phi


def _ratfunc_lead(r: RatFunc):
    """Leading (lowest t-order) scalar of a nonzero rational function."""
    from .series import tp_ord
    f = r.field
    a = tp_ord(f, r.num)
    b = tp_ord(f, r.den)
    return f.div(r.num[a], r.den[b])


def _residue_roots(field: BaseField, phi: list) -> list:
    """Nonzero roots in k of the scalar polynomial phi, exact.

    F_p: brute force (p is small in every supported configuration); Q:
    rational-root search after clearing denominators.
    """
    if len(phi) < 2:
        return []
    if field.char > 0:
        p = field.char
        if p > 10**6:
            raise WorkbenchError("residue-root search infeasible for this characteristic")
        return [c for c in range(1, p) if _phi_eval(field, phi, c) == 0]
    # char 0: clear denominators, try divisors of constant over divisors of lead
    den = 1
    for c in phi:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in phi]
    lo = next(i for i, c in enumerate(ints) if c != 0)
    ints = ints[lo:]  # factor out c = 0 roots; we want nonzero roots only
    if len(ints) < 2:
        return []
    roots = []
    for pnum in _divisors(abs(ints[0])):
        for qden in _divisors(abs(ints[-1])):
            for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                if cand not in roots and _phi_eval(field, phi, cand) == 0:
                    roots.append(cand)
    return roots


def _phi_eval(field, phi, c):
    c = field.coerce(c)
    acc = field.zero()
    for coef in reversed(phi):
        acc = field.add(field.mul(acc, c), coef)
    return acc


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list:
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
