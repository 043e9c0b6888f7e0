"""Classification and lifting of valuation extensions to the completion.

The five extension kinds, the induced extension on K-hat(X), completeness
checks for key-polynomial sequences and their lifting, the continuity-of-
roots threshold, and the two approximation algorithms (same-delta
approximation over K; density of K(X) in K-hat(X)).  Every approximation
output is re-verified by independent evaluation before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .algnum import AlgElement, Linear, NoRootFound, galois_twist, minpoly_over_completion
from .errors import (
    DeltaTooLarge,
    HorizonExceeded,
    PrecisionExhausted,
    Uncertified,
    UnsupportedKind,
    WorkbenchError,
    ZeroPolynomial,
)
from .groupval import FIN0, GroupVal
from .pcs import (
    CauchyWithLimit,
    StrictlyIncreasingAtHorizon,
    TranscendentalTypeEvidence,
    classify_generator,
    values_along,
)
from .polyx import RATFUNC, SERIES, PolyX
from .series import PuiseuxSeries, RatFunc, truncate_to_ratfunc
from .valuation import OVER_KHAT, ValuationSpec, delta, eval_spec, is_pair_equivalent

# extension kinds
RESIDUE_TRANSCENDENTAL = "ResidueTranscendental"
VALUE_TRANSCENDENTAL_COFINAL = "ValueTranscendentalCofinal"
VALUE_TRANSCENDENTAL_UNIQUE_PAIR = "ValueTranscendentalUniquePair"
VALUATION_ALGEBRAIC_TYPE_I = "ValuationAlgebraicTypeI"
VALUATION_ALGEBRAIC_TYPE_II = "ValuationAlgebraicTypeII"

DENSITY_KINDS = (RESIDUE_TRANSCENDENTAL, VALUE_TRANSCENDENTAL_COFINAL,
                 VALUATION_ALGEBRAIC_TYPE_I)


def classify_extension(spec: ValuationSpec, ram_cap: int = 64) -> str:
    """Map a spec to its extension kind.

    Monomial weights in the embedded rationals give residue-transcendental
    extensions; a weight with nonzero lex component exceeds every rational,
    so the pair of definition is unique.  Limit specs split by the
    generator's Cauchy/transcendental-type dichotomy.
    """
    if spec.kind in ("gauss", "monomial"):
        if spec.gamma.is_inf:
            raise WorkbenchError("a valuation weight cannot be infinite")
        if spec.gamma.is_torsion_mod_base():
            if spec.declared_cofinal:
                return VALUE_TRANSCENDENTAL_COFINAL
            return RESIDUE_TRANSCENDENTAL
        return VALUE_TRANSCENDENTAL_UNIQUE_PAIR
    if spec.kind == "pcslimit":
        verdict = classify_generator(spec.gen, ram_cap)
        if isinstance(verdict, CauchyWithLimit):
            return VALUATION_ALGEBRAIC_TYPE_II
        return VALUATION_ALGEBRAIC_TYPE_I
    raise WorkbenchError(f"cannot classify a spec of kind {spec.kind!r}")


def induce(spec: ValuationSpec, ram_cap: int = 64):
    """The induced extension on K-hat(X), with a provenance note.

    Monomial data carries over unchanged (the induced extension is uniquely
    determined by any pair of definition).  A limit spec with a Cauchy
    generator becomes the monomial spec at the limit with the lex weight
    (1, 0); a transcendental-type generator stays a limit spec.
    """
    if spec.kind in ("gauss", "monomial"):
        return spec.retag(OVER_KHAT), "same pair of definition, retagged over the completion"
    if spec.kind == "pcslimit":
        verdict = classify_generator(spec.gen, ram_cap)
        if isinstance(verdict, CauchyWithLimit):
            ind = ValuationSpec.monomial(verdict.limit, GroupVal.lex(1, 0), over=OVER_KHAT)
            return ind, "Cauchy generator: unique-pair monomial spec at the limit"
        return spec.retag(OVER_KHAT), ("transcendental-type generator: immediate "
                                       "extension, limit spec retagged")
    raise WorkbenchError(f"cannot induce from a spec of kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# key-polynomial sequences
# ---------------------------------------------------------------------------

class CskpSeq:
    """An ordered sequence of (key polynomial, delta) with distinct,
    increasing deltas."""

    def __init__(self, entries):
        entries = list(entries)
        for (q1, d1), (q2, d2) in zip(entries, entries[1:]):
            if not d1 < d2:
                raise WorkbenchError(
                    f"sequence deltas must strictly increase: {d1.to_text()} "
                    f"then {d2.to_text()}")
        self.entries = entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, CskpSeq) and self.entries == other.entries

    def to_text(self) -> str:
        return "; ".join(f"{q.to_text()} @ {d.to_text()}" for q, d in self.entries)


@dataclass
class Witness:
    index: int
    value: GroupVal


@dataclass
class NoWitness:
    tested: int
    caveats: list = dc_field(default_factory=list)


def cskp_check(seq: CskpSeq, f: PolyX, spec: ValuationSpec) -> object:
    """First sequence entry computing v f through its digit expansion.

    Returns Witness(index) for the first Q with deg Q <= deg f and
    v_Q f = v f; NoWitness signals that the sequence is incomplete for f
    at desk scale.
    """
    vf = eval_spec(spec, f)
    caveats = []
    tested = 0
    for idx, (Q, _) in enumerate(seq):
        if Q.degree() > max(f.degree(), 0):
            continue
        tested += 1
        try:
            vQ = eval_spec(spec, Q)
            kp = ValuationSpec.keypoly(Q, vQ, base=spec, over=spec.over)
            if eval_spec(kp, f) == vf:
                return Witness(idx, vf)
        except (PrecisionExhausted, HorizonExceeded) as exc:
            caveats.append(f"entry {idx}: {exc}")
    return NoWitness(tested, caveats)


def lift_cskp(seq: CskpSeq, spec: ValuationSpec, center: Optional[AlgElement] = None,
              budget=Fraction(64), ram_cap: int = 64):
    """Lift a complete sequence over K to one over the completion.

    Cofinal and transcendental-type cases pass through unchanged.  In the
    unique-pair case the final certificate polynomial is replaced: the
    degree filter keeps entries of degree at most deg of the root's minimal
    polynomial over the completion, and X - root is appended when a ram-1
    root is found.  A Cauchy limit spec appends X - limit directly.
    Returns (lifted sequence, note).
    """
    kind = classify_extension(spec, ram_cap)
    if kind in (RESIDUE_TRANSCENDENTAL, VALUE_TRANSCENDENTAL_COFINAL,
                VALUATION_ALGEBRAIC_TYPE_I):
        return seq, f"{kind}: sequence lifts unchanged"
    if kind == VALUE_TRANSCENDENTAL_UNIQUE_PAIR:
        if center is None:
            raise Uncertified("unique-pair lifting needs the certified center")
        res = minpoly_over_completion(center, budget)
        if isinstance(res, NoRootFound):
            return seq, (f"inconclusive at budget {res.budget}: no ram-1 root; "
                         "final certificate left in place")
        root = res.root
        qhat = PolyX.from_series(root.field,
                                 [-root, PuiseuxSeries.one(root.field)])
        kept = [(q, d) for q, d in seq if q.degree() <= qhat.degree()]
        return CskpSeq(kept + [(qhat, spec.gamma)]), "unique pair: root found in the completion"
    # type II: the limit is the new final center
    verdict = classify_generator(spec.gen, ram_cap)
    limit = verdict.limit
    qhat = PolyX.from_series(limit.field, [-limit, PuiseuxSeries.one(limit.field)])
    kept = [(q, d) for q, d in seq if q.degree() <= 1]
    return CskpSeq(kept + [(qhat, GroupVal.lex(1, 0))]), "Cauchy limit appended as final center"


# ---------------------------------------------------------------------------
# continuity of roots
# ---------------------------------------------------------------------------

def roots_matching_threshold(f: PolyX, alpha: GroupVal) -> GroupVal:
    """The perturbation bound n^n a - 3 n^n (v00 f - v c_n) + v c_n.

    Perturbing f by anything of Gauss value above this bound keeps a root
    pairing with differences of value above alpha.
    """
    if not alpha.is_fin:
        raise WorkbenchError("the threshold needs a rational alpha")
    n = f.degree()
    if n < 1:
        raise ZeroPolynomial("threshold needs a polynomial of positive degree")
    v00 = _gauss_value(f)
    vcn = f.leading().val()
    nn = n**n
    return GroupVal.fin(nn * alpha.q - 3 * nn * (v00.q - vcn.q) + vcn.q)


def _gauss_value(f: PolyX) -> GroupVal:
    spec = ValuationSpec.gauss(f.field)
    return eval_spec(spec, f)


def verify_root_matching(f: PolyX, f2: PolyX, alpha: GroupVal,
                         centers=(), paired_roots=None) -> bool:
    """Check the threshold's promise on concrete data.

    Polygon multisets of f and f2 must agree at 0 and at each supplied
    center; when pre-factored roots are supplied, they must pair off with
    differences of value above alpha.
    """
    if f.newton_polygon() != f2.newton_polygon():
        return False
    for c in centers:
        if f.newton_polygon(c) != f2.newton_polygon(c):
            return False
    if paired_roots is not None:
        for z1, z2 in paired_roots:
            d = z1 - z2
            if d.coeffs:
                if not d.val() > alpha:
                    return False
            elif d.prec is not None and not GroupVal.fin(Fraction(d.prec)) > alpha:
                return False
    return True


# ---------------------------------------------------------------------------
# approximation over K
# ---------------------------------------------------------------------------

def _truncate_coeff(c, cutoff: Fraction) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    return truncate_to_ratfunc(c, cutoff)


def approximate_same_delta(f: PolyX, alpha: GroupVal, spec: ValuationSpec) -> PolyX:
    """A polynomial over K with the same degree, value and delta as f.

    Requires delta(f) < alpha in the rationals; the coefficient cutoff comes
    from the continuity-of-roots threshold, and all three equalities are
    re-verified before returning.
    """
    if not alpha.is_fin:
        raise WorkbenchError("alpha must be a rational value")
    d = delta(spec, f)
    if not d < alpha:
        raise DeltaTooLarge(f"delta(f) = {d.to_text()} is not below alpha = {alpha.to_text()}")
    if f.domain == RATFUNC:
        return f
    vf = eval_spec(spec, f)
    tau = roots_matching_threshold(f, alpha) if f.degree() >= 1 else alpha
    terms = [tau.q, alpha.q, _gauss_value(f).q, f.leading().val().q]
    if vf.is_fin:
        terms.append(vf.q)
    cutoff = max(terms) + 1
    out = PolyX.from_ratfuncs(f.field, [_truncate_coeff(c, cutoff) for c in f.coeffs])
    if out.degree() != f.degree():
        raise WorkbenchError("truncation dropped the leading coefficient")
    if eval_spec(spec, out) != vf:
        raise WorkbenchError("truncation failed to preserve the value")
    if delta(spec, out) != d:
        raise WorkbenchError("truncation failed to preserve delta")
    return out


# ---------------------------------------------------------------------------
# density of K(X) in the completion's function field
# ---------------------------------------------------------------------------

UNIQUE_PAIR_DENSITY_OBSTRUCTION = (
    "no element of K(X) approximates f/g beyond the rationals: with a unique "
    "pair of definition the completion's function field contains elements at "
    "infinite distance from K(X)")


@dataclass
class DensityResult:
    f_prime: PolyX
    g_prime: PolyX
    beta: Fraction
    cutoff: Fraction
    note: str


def approximate_density(f: PolyX, g: PolyX, alpha: GroupVal,
                        spec: ValuationSpec, ram_cap: int = 64) -> DensityResult:
    """Theorem-1.4-style approximation of f/g by a quotient over K.

    Selects the weight beta from the two inequality families (beta + i*gamma
    > alpha for all i <= max(deg f, deg g); beta + min(C, D) + k*gamma >
    alpha + 2 v g for all k <= deg f + deg g), truncates coefficients
    accordingly, and verifies every output condition by independent
    re-evaluation.  Raises UnsupportedKind for unique-pair and Cauchy-limit
    specs, where density provably fails.
    """
    if not alpha.is_fin:
        raise WorkbenchError("alpha must be a rational value")
    kind = classify_extension(spec, ram_cap)
    if kind not in DENSITY_KINDS:
        raise UnsupportedKind(
            f"density approximation is impossible for kind {kind}",
            UNIQUE_PAIR_DENSITY_OBSTRUCTION)
    if g.is_zero():
        raise ZeroPolynomial("the denominator g must be nonzero")
    if spec.kind == "pcslimit":
        return _density_via_stabilized_pair(f, g, alpha, spec)
    return _density_monomial(f, g, alpha, spec)


def _density_monomial(f: PolyX, g: PolyX, alpha: GroupVal,
                      spec: ValuationSpec) -> DensityResult:
    if f.domain == RATFUNC and g.domain == RATFUNC:
        return DensityResult(f, g, Fraction(0), Fraction(0), "already over K")
    center, gamma = spec.center, spec.gamma
    vf, vg = eval_spec(spec, f), eval_spec(spec, g)
    n, m = f.degree(), g.degree()
    cmin = _min_recentered_value(f, center)
    dmin = _min_recentered_value(g, center)
    mincd = min(cmin, dmin)
    # beta > alpha - i*gamma and beta > alpha + 2vg - min(C,D) - k*gamma
    b1 = max(alpha.q - i * gamma.q for i in range(max(m, n) + 1))
    b2 = max(alpha.q + 2 * vg.q - mincd.q - k * gamma.q for k in range(m + n + 1))
    bound = max(b1, b2)
    e = _lcm(bound.denominator, gamma.q.denominator)
    beta = Fraction(math.floor(bound * e) + 1, e) + 1  # minimal in (1/e)Z, +1 margin
    cutoff_terms = [beta, alpha.q, _gauss_value(f).q, _gauss_value(g).q,
                    f.leading().val().q, g.leading().val().q]
    for h in (f, g):
        if h.degree() >= 1:
            try:
                dh = delta(spec, h)
                cutoff_terms.append(roots_matching_threshold(h, dh).q)
            except PrecisionExhausted:
                pass
    va = None
    if center.coeffs:
        va = center.val().q
        cutoff_terms.extend(beta - j * va for j in range(1, max(m, n) + 1))
    cutoff = max(cutoff_terms) + 1
    f1 = PolyX.from_ratfuncs(f.field, [_truncate_coeff(c, cutoff) for c in f.coeffs])
    g1 = PolyX.from_ratfuncs(g.field, [_truncate_coeff(c, cutoff) for c in g.coeffs])
    _verify_density(f, g, f1, g1, alpha, spec, vf, vg)
    return DensityResult(f1, g1, beta, cutoff, "verified")


def _density_via_stabilized_pair(f: PolyX, g: PolyX, alpha: GroupVal,
                                 spec: ValuationSpec) -> DensityResult:
    """Reduce the limit-spec case to a monomial pair chosen deep enough.

    Picks the first index where the values of f and g have stabilized and
    the sequence weight exceeds a raised target alpha_0 > max(alpha, vf,
    vg); runs the monomial construction there and re-verifies under the
    original spec.
    """
    gen = spec.gen
    vf, vg = eval_spec(spec, f), eval_spec(spec, g)
    alpha0 = GroupVal.fin(max(alpha.q, vf.q, vg.q) + 1)
    gammas = gen.gammas()
    elems = gen.elements()
    chosen = None
    for i, gm in enumerate(gammas):
        if gm <= alpha0:
            continue
        pair_spec = ValuationSpec.monomial(elems[i], gm, over=spec.over)
        if eval_spec(pair_spec, f) == vf and eval_spec(pair_spec, g) == vg:
            chosen = pair_spec
            break
    if chosen is None:
        raise HorizonExceeded(
            "no sequence index stabilizes f and g above the raised alpha")
    res = _density_monomial(f, g, alpha0, chosen)
    _verify_density(f, g, res.f_prime, res.g_prime, alpha, spec, vf, vg)
    return res


def _min_recentered_value(h: PolyX, center) -> GroupVal:
    from .valuation import _min_weighted
    return _min_weighted(h.recenter_hasse(center), FIN0)


def _verify_density(f, g, f1, g1, alpha, spec, vf, vg):
    checks = [
        (f.degree() == f1.degree(), "deg f preserved"),
        (g.degree() == g1.degree(), "deg g preserved"),
        (eval_spec(spec, f1) == vf, "v f preserved"),
        (eval_spec(spec, g1) == vg, "v g preserved"),
        (_value_exceeds(spec, f - f1, alpha), "v(f - f') > alpha"),
        (_value_exceeds(spec, g - g1, alpha), "v(g - g') > alpha"),
        (_quotient_gap_exceeds(spec, f, g, f1, g1, vg, alpha),
         "v(f/g - f'/g') > alpha"),
    ]
    for ok, label in checks:
        if not ok:
            raise WorkbenchError(f"density verification failed: {label}")


def _value_exceeds(spec: ValuationSpec, h: PolyX, bound: GroupVal) -> bool:
    """True iff v h > bound, accepting PosInf and horizon-capped evidence."""
    if h.is_zero():
        return True
    try:
        return eval_spec(spec, h) > bound
    except HorizonExceeded:
        if spec.kind == "pcslimit":
            _, trend = values_along(h, spec.gen)
            if isinstance(trend, StrictlyIncreasingAtHorizon):
                return trend.last >= bound
        raise


def _quotient_gap_exceeds(spec, f, g, f1, g1, vg, alpha) -> bool:
    num = f * g1 - f1 * g
    if num.is_zero():
        return True
    target = alpha + vg + eval_spec(spec, g1)
    return _value_exceeds(spec, num, target)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# uniqueness and conjugacy checks
# ---------------------------------------------------------------------------

def uniqueness_check(a, b, gamma: GroupVal, samples, spec_over=OVER_KHAT) -> dict:
    """Equal evaluation under equivalent pairs (a, gamma) and (b, gamma).

    ``samples`` is an iterable of polynomials; any discrepancy would falsify
    the implementation, not the theorem, and is reported verbatim.
    """
    if not is_pair_equivalent(a, b, gamma):
        raise WorkbenchError("centers are not equivalent at this gamma")
    sa = ValuationSpec.monomial(a, gamma, over=spec_over)
    sb = ValuationSpec.monomial(b, gamma, over=spec_over)
    checked, skipped, discrepancies = 0, [], []
    for f in samples:
        try:
            va, vb = eval_spec(sa, f), eval_spec(sb, f)
        except PrecisionExhausted as exc:
            skipped.append(str(exc))
            continue
        checked += 1
        if va != vb:
            discrepancies.append((f.to_text(), va.to_text(), vb.to_text()))
    return {"checked": checked, "skipped": len(skipped),
            "discrepancies": discrepancies}


def conjugacy_check(a: AlgElement, gamma: GroupVal, m: int, ram_cap: int = 64) -> dict:
    """Twist the center and compare certificates and classifications.

    The twisted center must satisfy the same minimal polynomial, and the
    monomial specs at the two centers must classify identically.
    """
    a1 = galois_twist(a, m)
    shared = True
    if a.minpoly is not None:
        value = a.minpoly.evaluate(a1.expansion)
        shared = isinstance(value, PuiseuxSeries) and not value.coeffs or (
            isinstance(value, RatFunc) and value.is_zero())
    k0 = classify_extension(ValuationSpec.monomial(a.expansion, gamma), ram_cap)
    k1 = classify_extension(ValuationSpec.monomial(a1.expansion, gamma), ram_cap)
    return {"twisted_center": a1.expansion.to_text(),
            "shared_minpoly": bool(shared),
            "kind": k0, "twisted_kind": k1,
            "kinds_match": k0 == k1}
