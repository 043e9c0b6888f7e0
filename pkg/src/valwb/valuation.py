"""Valuation specifications on K(X) and their evaluation.

A :class:`ValuationSpec` is one of

* ``Gauss``                      -- vf = min val(c_i), i.e. the monomial
  valuation centered at 0 with weight 0;
* ``Monomial(center, gamma)``    -- recenter at the center, weight the
  (X - center)-degree by gamma, take the minimum;
* ``KeyPoly(Q, vQ, base)``       -- expand in Q-adic digits, value the digits
  with the base spec and each Q-power by vQ;
* ``PcsLimit(gen)``              -- the limit along a pseudo-Cauchy sequence;
  evaluation delegates to the stabilized value of v f(a_m).

Universally quantified predicates (key polynomial, minimal pair) are exposed
as bounded falsifiers returning explicit verdicts, never as provers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    HorizonExceeded,
    ParseError,
    PrecisionExhausted,
    Uncertified,
    WorkbenchError,
    ZeroPolynomial,
)
from .field import BaseField
from .groupval import FIN0, GroupVal
from .polyx import PolyX, elt_as_series, elt_is_decidably_zero, elt_is_unknown_zero
from .series import PuiseuxSeries, RatFunc

OVER_K = "K"
OVER_KHAT = "Khat"


class ValuationSpec:
    """Immutable description of an extension of the t-adic valuation to K(X)."""

    __slots__ = ("kind", "field", "center", "gamma", "Q", "vQ", "base", "gen",
                 "over", "declared_cofinal")

    def __init__(self, kind, field, center=None, gamma=None, Q=None, vQ=None,
                 base=None, gen=None, over=OVER_K, declared_cofinal=False):
        self.kind = kind
        self.field = field
        self.center = center
        self.gamma = gamma
        self.Q = Q
        self.vQ = vQ
        self.base = base
        self.gen = gen
        self.over = over
        self.declared_cofinal = declared_cofinal

    # -- constructors ------------------------------------------------------

    @staticmethod
    def gauss(field: BaseField, over=OVER_K) -> "ValuationSpec":
        return ValuationSpec("gauss", field, center=PuiseuxSeries.zero(field),
                             gamma=FIN0, over=over)

    @staticmethod
    def monomial(center, gamma: GroupVal, over=OVER_K) -> "ValuationSpec":
        if isinstance(center, RatFunc):
            center = elt_as_series(center)
        field = center.field
        return ValuationSpec("monomial", field, center=center, gamma=gamma, over=over)

    @staticmethod
    def keypoly(Q: PolyX, vQ: GroupVal, base: "ValuationSpec", over=OVER_K) -> "ValuationSpec":
        if not Q.is_monic() or Q.degree() < 1:
            raise WorkbenchError("key polynomial must be monic of degree >= 1")
        return ValuationSpec("keypoly", Q.field, Q=Q, vQ=vQ, base=base, over=over)

    @staticmethod
    def pcslimit(gen, over=OVER_K) -> "ValuationSpec":
        return ValuationSpec("pcslimit", gen.field, gen=gen, over=over)

    def retag(self, over) -> "ValuationSpec":
        return ValuationSpec(self.kind, self.field, self.center, self.gamma,
                             self.Q, self.vQ, self.base, self.gen, over,
                             self.declared_cofinal)

    # -- text ---------------------------------------------------------------

    def to_text(self) -> str:
        if self.kind == "gauss":
            return f"gauss over={self.over}"
        if self.kind == "monomial":
            return (f"monomial center={self.center.to_text()} "
                    f"gamma={self.gamma.to_text()} over={self.over}")
        if self.kind == "keypoly":
            return (f"keypoly Q={self.Q.to_text()} vQ={self.vQ.to_text()} "
                    f"base=({self.base.to_text()}) over={self.over}")
        return f"pcslimit gen={self.gen.name} over={self.over}"

    def __repr__(self):
        return f"ValuationSpec({self.to_text()})"


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def eval_spec(spec: ValuationSpec, f: PolyX) -> GroupVal:
    """The value of the polynomial f under the spec; exact GroupVal."""
    if f.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial")
    if spec.kind in ("gauss", "monomial"):
        C = f.recenter_hasse(spec.center)
        return _min_weighted(C, spec.gamma)
    if spec.kind == "keypoly":
        digits = f.qadic_expand(spec.Q)
        best = None
        for i, digit in enumerate(digits):
            if digit.is_zero():
                continue
            term = eval_spec(spec.base, digit) + i * spec.vQ
            if best is None or term < best:
                best = term
        if best is None:
            raise ZeroPolynomial("all Q-adic digits vanish")
        return best
    if spec.kind == "pcslimit":
        from .pcs import UltimatelyConstant, values_along
        _, trend = values_along(f, spec.gen)
        if isinstance(trend, UltimatelyConstant):
            return trend.value
        raise HorizonExceeded(
            "f has no stabilized value along the sequence at this horizon")
    raise WorkbenchError(f"unknown spec kind {spec.kind!r}")


def _min_weighted(C: list, gamma: GroupVal) -> GroupVal:
    """min(val C_i + i*gamma) with honest undecidability handling.

    Unknown-zero coefficients contribute only a lower bound; the minimum is
    trusted iff every such bound sits at or above it.
    """
    best = None
    pending = []
    for i, c in enumerate(C):
        if elt_is_decidably_zero(c):
            continue
        if elt_is_unknown_zero(c):
            pending.append(GroupVal.fin(Fraction(c.prec)) + i * gamma)
            continue
        term = c.val() + i * gamma
        if best is None or term < best:
            best = term
    if best is None:
        raise PrecisionExhausted("no decidable coefficient valuation survives")
    for lb in pending:
        if lb < best:
            raise PrecisionExhausted(
                f"an undecidable coefficient (bound {lb.to_text()}) may cut "
                f"below the decided minimum {best.to_text()}")
    return best


def eval_rational(spec: ValuationSpec, f: PolyX, g: PolyX) -> GroupVal:
    """v(f/g) = vf - vg."""
    return eval_spec(spec, f) - eval_spec(spec, g)


def delta(spec: ValuationSpec, f: PolyX) -> GroupVal:
    """max v(X - z) over roots z of f, via the Newton polygon at the center.

    Under a monomial spec, v(X - z) = min(gamma, v(center - z)), so the
    polygon slopes beta_j at the center give delta = max_j min(gamma,
    beta_j); an exact root at the center contributes gamma itself.
    """
    if spec.kind in ("gauss", "monomial"):
        if f.degree() < 1:
            raise ZeroPolynomial("delta needs a polynomial with roots")
        best = None
        for slope, _ in f.newton_polygon(spec.center):
            term = spec.gamma if slope.is_inf else min(spec.gamma, slope)
            if best is None or term > best:
                best = term
        return best
    if spec.kind == "pcslimit":
        from .pcs import stabilized_delta
        return stabilized_delta(spec.gen, f)
    raise WorkbenchError(
        "delta is defined for monomial-shaped specs; rewrite a key-polynomial "
        "spec through its defining minimal pair first")


def is_pair_equivalent(a, b, gamma: GroupVal) -> bool:
    """True iff v(a - b) >= gamma, i.e. (b, gamma) defines the same extension."""
    if isinstance(a, RatFunc):
        a = elt_as_series(a)
    if isinstance(b, RatFunc):
        b = elt_as_series(b)
    d = a - b
    if d.coeffs:
        return d.val() >= gamma
    if d.prec is None:
        return True  # exact equality
    if GroupVal.fin(Fraction(d.prec)) >= gamma:
        return True  # v(a-b) >= prec >= gamma even though undecidable exactly
    raise PrecisionExhausted(
        f"v(a - b) is only known to be >= {d.prec}, below gamma = {gamma.to_text()}")


# ---------------------------------------------------------------------------
# bounded falsifiers
# ---------------------------------------------------------------------------

@dataclass
class Counterexample:
    f: PolyX


@dataclass
class NoCounterexampleFound:
    tested: int


def is_key_polynomial(spec: ValuationSpec, Q: PolyX, samples: int,
                      rng, extra_pool=()) -> object:
    """Falsify "deg f < deg Q implies delta(f) < delta(Q)" on a bounded pool.

    The pool is (i) X - c for structured centers (truncations of the spec's
    center at its support breaks, plus supplied candidates) and (ii)
    ``samples`` random polynomials of each degree below deg Q.  A verdict of
    NoCounterexampleFound is evidence, not proof.
    """
    from .sampling import random_polyx
    if not Q.is_monic():
        raise WorkbenchError("key polynomial candidate must be monic")
    dQ = delta(spec, Q)
    field = Q.field
    tested = 0
    pool = []
    if Q.degree() > 1:
        pool.extend(_center_truncations(spec))
        pool.extend(extra_pool)
        for c in pool:
            fc = _x_minus(field, c)
            try:
                if delta(spec, fc) >= dQ:
                    return Counterexample(fc)
            except PrecisionExhausted:
                pass
            tested += 1
    for d in range(1, Q.degree()):
        for _ in range(samples):
            f = random_polyx(field, rng, d, monic=True)
            try:
                if delta(spec, f) >= dQ:
                    return Counterexample(f)
            except PrecisionExhausted:
                pass
            tested += 1
    return NoCounterexampleFound(tested)


def _x_minus(field, c) -> PolyX:
    if isinstance(c, RatFunc):
        return PolyX.from_ratfuncs(field, [-c, RatFunc.one(field)])
    return PolyX.from_series(field, [-c, PuiseuxSeries.one(field)])


def _center_truncations(spec: ValuationSpec) -> list:
    """Truncations of the spec's center at each support break (structured pool)."""
    if spec.kind not in ("gauss", "monomial"):
        return []
    s = spec.center
    out = [PuiseuxSeries.zero(s.field)]
    for e in s.support():
        kept = {Fraction(n, s.ram): c for n, c in s.coeffs.items() if Fraction(n, s.ram) < e}
        out.append(PuiseuxSeries.from_terms(s.field, kept))
    return out


@dataclass
class Smaller:
    b: object


@dataclass
class NoneSmallerFound:
    tested: int


def minimal_pair_search(a, gamma: GroupVal, candidate_pool=()) -> object:
    """Search for a strictly lower-degree equivalent center (desk-scale).

    Pool: truncations of a's expansion at each support break, plus supplied
    candidates.  A candidate qualifies when its certified degree is smaller
    and v(a - b) >= gamma.
    """
    from .algnum import AlgElement
    deg_a = a.degree()
    s = a.expansion
    tested = 0
    pool = list(_center_truncations(ValuationSpec.monomial(s, gamma)))
    pool.extend(candidate_pool)
    for b in pool:
        bs = elt_as_series(b) if isinstance(b, RatFunc) else (
            b.expansion if isinstance(b, AlgElement) else b)
        deg_b = _pool_degree(bs)
        tested += 1
        if deg_b is None or deg_b >= deg_a:
            continue
        try:
            if is_pair_equivalent(s, bs, gamma):
                return Smaller(bs)
        except PrecisionExhausted:
            continue
    return NoneSmallerFound(tested)


def _pool_degree(b: PuiseuxSeries) -> Optional[int]:
    """Degree of a finite exact Puiseux sum: its ramification index, when k
    has the matching root of unity; 1 for unramified exact sums (in K)."""
    if b.prec is not None:
        return None
    if b.ram == 1:
        return 1
    if b.field.root_of_unity(b.ram) is not None:
        return b.ram
    return None
