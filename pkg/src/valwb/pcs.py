"""Pseudo-Cauchy sequences at desk scale.

A sequence {a_m} with strictly increasing gamma_m = v(a_m - a_{m+1}) is
materialized up to a finite horizon; every "for all m" claim of the theory
becomes "for all materialized m" with the horizon recorded in the verdict.
Classification separates sequences that are Cauchy with a representable
limit from those showing transcendental-type evidence (unbounded
ramification denominators, or gamma bounded below a declared cofinality
bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import HorizonExceeded, NotPcs, PrecisionExhausted, WorkbenchError
from .field import BaseField
from .groupval import GroupVal
from .polyx import PolyX
from .series import PuiseuxSeries, RatFunc

DEFAULT_HORIZON = 12
DEFAULT_WINDOW = 3
DEFAULT_RAM_CAP = 64


class PcsGenerator:
    """A closed-form or explicit pseudo-Cauchy sequence with a finite horizon."""

    def __init__(self, name: str, field: BaseField, items, horizon: int = DEFAULT_HORIZON,
                 value_group_bound: Optional[GroupVal] = None, window: int = DEFAULT_WINDOW):
        if horizon < 3:
            raise WorkbenchError("horizon must be at least 3")
        self.name = name
        self.field = field
        self._items = items  # callable m -> PuiseuxSeries, or a list
        self.horizon = horizon
        self.value_group_bound = value_group_bound
        self.window = window
        self._elements = None
        self._gammas = None

    def element(self, m: int) -> PuiseuxSeries:
        if m > self.horizon:
            raise HorizonExceeded(f"index {m} beyond horizon {self.horizon}")
        if callable(self._items):
            return self._items(m)
        return self._items[m]

    def elements(self) -> list:
        if self._elements is None:
            self._elements = [self.element(m) for m in range(self.horizon + 1)]
        return self._elements

    def gammas(self) -> list:
        """gamma_m = v(a_m - a_{m+1}) for m < horizon; validates the prefix."""
        if self._gammas is None:
            self._gammas = validate_prefix(self.elements())
        return self._gammas

    def raised(self, horizon: int) -> "PcsGenerator":
        return PcsGenerator(self.name, self.field, self._items, horizon,
                            self.value_group_bound, self.window)


def validate_prefix(prefix: list) -> list:
    """Check the pseudo-Cauchy condition on a materialized prefix.

    Returns the strictly increasing gamma_m = v(z_m - z_{m+1}); also checks
    the triangle consequence v(z_m - z_r) = gamma_m for every m < r.
    """
    if len(prefix) < 3:
        raise WorkbenchError("a pseudo-Cauchy prefix needs at least 3 elements")
    gammas = []
    for m in range(len(prefix) - 1):
        d = prefix[m] - prefix[m + 1]
        g = d.val()  # PrecisionExhausted propagates; PosInf means equal elements
        if g.is_inf:
            raise NotPcs(m, f"consecutive elements {m}, {m + 1} coincide")
        if gammas and g <= gammas[-1]:
            raise NotPcs(m, f"gamma_{m} = {g.to_text()} does not exceed gamma_{m - 1}")
        gammas.append(g)
    for m in range(len(prefix) - 1):
        for r in range(m + 2, len(prefix)):
            if (prefix[m] - prefix[r]).val() != gammas[m]:
                raise NotPcs(m, f"v(z_{m} - z_{r}) differs from gamma_{m}")
    return gammas


def is_limit(y: PuiseuxSeries, gen: PcsGenerator) -> bool:
    """True iff v(y - a_m) = gamma_m for every materialized m."""
    gammas = gen.gammas()
    elems = gen.elements()
    for m, g in enumerate(gammas):
        d = y - elems[m]
        if not d.coeffs and d.prec is not None:
            # undecidable beyond y's precision; consistent iff gamma_m lies
            # at or beyond the cap
            if g >= GroupVal.fin(Fraction(d.prec)):
                continue
            return False
        if d.val() != g:
            return False
    return True


@dataclass
class UltimatelyConstant:
    value: GroupVal
    from_index: int


@dataclass
class StrictlyIncreasingAtHorizon:
    last: GroupVal


def values_along(f: PolyX, gen: PcsGenerator):
    """(values, trend) for v f(a_m) along the sequence.

    UltimatelyConstant requires the last ``window`` entries to agree; a
    strictly increasing tail means f's value has not stabilized and is the
    signature of f vanishing at the limit.
    """
    vals = []
    capped = False
    for a in gen.elements():
        value = f.evaluate(a)
        try:
            vals.append(value.val())
        except PrecisionExhausted:
            # f(a_m) vanished beyond the working precision: the value grew
            # past everything representable, the increasing-tail signature
            capped = True
            break
    W = gen.window
    if capped:
        if len(vals) >= 2 and all(vals[j] < vals[j + 1] for j in range(max(0, len(vals) - W), len(vals) - 1)):
            return vals, StrictlyIncreasingAtHorizon(vals[-1])
        raise PrecisionExhausted(
            "f(a_m) undecidable at working precision before any trend emerged")
    if len(vals) < W:
        raise HorizonExceeded("window exceeds the materialized horizon")
    tail = vals[-W:]
    if all(v == tail[0] for v in tail):
        i = len(vals) - 1
        while i > 0 and vals[i - 1] == tail[0]:
            i -= 1
        return vals, UltimatelyConstant(tail[0], i)
    if all(tail[j] < tail[j + 1] for j in range(W - 1)):
        return vals, StrictlyIncreasingAtHorizon(tail[-1])
    raise HorizonExceeded("value sequence neither constant nor increasing over the window")


def stabilized_delta(gen: PcsGenerator, f: PolyX) -> GroupVal:
    """delta(f) along the sequence: the stabilized delta under the monomial
    spec at (a_m, gamma_m)."""
    from .valuation import ValuationSpec, delta
    gammas = gen.gammas()
    elems = gen.elements()
    ds = [delta(ValuationSpec.monomial(elems[m], gammas[m]), f)
          for m in range(len(gammas))]
    W = gen.window
    tail = ds[-W:]
    if all(d == tail[0] for d in tail):
        return tail[0]
    raise HorizonExceeded("delta did not stabilize within the horizon")


@dataclass
class CauchyWithLimit:
    limit: PuiseuxSeries


@dataclass
class TranscendentalTypeEvidence:
    criterion: str
    detail: str


def classify_generator(gen: PcsGenerator, ram_cap: int = DEFAULT_RAM_CAP):
    """Desk-scale dichotomy for the sequence.

    Evidence of transcendental type fires on exactly two patterns: support
    denominators exceeding the ramification cap, or gamma_m bounded above by
    the declared value-group bound.  Otherwise, strictly increasing
    unbounded gammas with stable denominators give a Cauchy verdict and the
    materialized limit.  Verdicts are evidence, not proofs.
    """
    gammas = gen.gammas()
    elems = gen.elements()
    rams = [a.ram for a in elems]
    if max(rams) > ram_cap:
        return TranscendentalTypeEvidence(
            "unbounded ramification denominators",
            f"support denominators reach {max(rams)} > cap {ram_cap} "
            f"within horizon {gen.horizon}")
    if gen.value_group_bound is not None and all(g < gen.value_group_bound for g in gammas):
        return TranscendentalTypeEvidence(
            "gamma bounded below the declared cofinality bound",
            f"gamma_{len(gammas) - 1} = {gammas[-1].to_text()} < "
            f"{gen.value_group_bound.to_text()}")
    if rams[-1] == rams[0] or all(r <= ram_cap for r in rams):
        limit = elems[-1]
        cap = gammas[-1].q
        return CauchyWithLimit(PuiseuxSeries(limit.field, limit.ram,
                                             dict(limit.coeffs), Fraction(cap)))
    raise HorizonExceeded("no classification criterion fired within the horizon")


# ---------------------------------------------------------------------------
# built-in sequences
# ---------------------------------------------------------------------------

def artin_schreier_generator(p: int, horizon: int = DEFAULT_HORIZON) -> PcsGenerator:
    """a_m = sum of t^(p^n) for n <= m over F_p; gamma_m = p^(m+1)."""
    from .field import GF
    field = GF(p)

    def items(m):
        return PuiseuxSeries.from_terms(field, {Fraction(p**n): 1 for n in range(m + 1)})

    return PcsGenerator(f"artin-schreier({p})", field, items, horizon)


def exponential_generator(horizon: int = DEFAULT_HORIZON) -> PcsGenerator:
    """a_m = sum of t^n / n! for n <= m over Q; gamma_m = m + 1."""
    from math import factorial

    from .field import QQ

    def items(m):
        return PuiseuxSeries.from_terms(
            QQ, {Fraction(n): Fraction(1, factorial(n)) for n in range(m + 1)})

    return PcsGenerator("exponential", QQ, items, horizon)


def mixed_radix_generator(p: int, q: int, horizon: int = DEFAULT_HORIZON) -> PcsGenerator:
    """a_m = sum of t^(q^n / p^n) for n <= m; gamma_m = (q/p)^(m+1).

    Needs p < q so the gammas increase; the support denominators p^m grow
    without bound, the signature pattern of transcendental type.
    """
    from .field import QQ
    if not p < q:
        raise WorkbenchError("mixed-radix sequence needs p < q")

    def items(m):
        return PuiseuxSeries.from_terms(
            QQ, {Fraction(q**n, p**n): 1 for n in range(m + 1)})

    return PcsGenerator(f"mixed-radix({p},{q})", QQ, items, horizon,
                        value_group_bound=None)


def builtin_generator(name: str, horizon: int = DEFAULT_HORIZON) -> PcsGenerator:
    """Resolve "artin-schreier(p)", "exponential", "mixed-radix(p,q)"."""
    name = name.strip()
    if name == "exponential":
        return exponential_generator(horizon)
    if name.startswith("artin-schreier(") and name.endswith(")"):
        return artin_schreier_generator(int(name[15:-1]), horizon)
    if name.startswith("mixed-radix(") and name.endswith(")"):
        p, q = name[12:-1].split(",")
        return mixed_radix_generator(int(p), int(q), horizon)
    raise WorkbenchError(f"unknown generator {name!r}")
