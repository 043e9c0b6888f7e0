"""Precision-tracked truncated Puiseux series over F_p or Q, and exact
rational functions in t.

Two element types live here:

* :class:`RatFunc` -- an exact element of K = k(t), stored as a reduced
  fraction of polynomials in t.  Its t-adic valuation is exact.
* :class:`PuiseuxSeries` -- a truncated element of k((t^(1/e))), stored as a
  sparse map from lattice exponents to nonzero scalars together with a hard
  precision cap.  Every operation computes the exact precision it can
  guarantee for its output; questions whose answer would need coefficients
  beyond the cap raise :class:`~valwb.errors.PrecisionExhausted` instead of
  guessing.

The distinguished exact zero is the only series with infinite precision and
empty support; an empty support under a finite cap means "indistinguishable
from zero at this precision" and is *not* zero.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional

from .errors import (
    NegativeSupport,
    NegativeValuation,
    ParseError,
    PrecisionExhausted,
    RamifiedInput,
    WorkbenchError,
)
from .field import BaseField
from .groupval import GroupVal

DEFAULT_PREC = Fraction(64)


# ---------------------------------------------------------------------------
# dense polynomials in t over the base field (internal plumbing for RatFunc)
# ---------------------------------------------------------------------------

def tp_trim(field, c):
    while c and field.is_zero(c[-1]):
        c.pop()
    return c


def tp_is_zero(c):
    return not c


def tp_deg(c):
    return len(c) - 1


def tp_add(field, a, b):
    n = max(len(a), len(b))
    out = [field.zero()] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = field.add(out[i], x)
    return tp_trim(field, out)


def tp_neg(field, a):
    return [field.neg(x) for x in a]


def tp_sub(field, a, b):
    return tp_add(field, a, tp_neg(field, b))


def tp_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return tp_trim(field, out)


def tp_scalar(field, a, s):
    return tp_trim(field, [field.mul(x, s) for x in a])


def tp_divmod(field, a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        if len(r) < len(b) + i:
            continue
        c = field.mul(r[len(b) + i - 1], inv_lead)
        if field.is_zero(c):
            continue
        q[i] = c
        for j, y in enumerate(b):
            r[i + j] = field.sub(r[i + j], field.mul(c, y))
    return tp_trim(field, q), tp_trim(field, r)


def tp_gcd(field, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, tp_divmod(field, a, b)[1]
    if a:
        a = tp_scalar(field, a, field.inv(a[-1]))  # monic normal form
    return a


def tp_ord(field, a) -> Optional[int]:
    """t-adic order; None for the zero polynomial."""
    for i, x in enumerate(a):
        if not field.is_zero(x):
            return i
    return None


def _join_signed(parts) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def tp_text(field, a) -> str:
    if not a:
        return "0"
    parts = []
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        cs = field.scalar_text(x)
        if i == 0:
            parts.append(cs)
        elif cs == "1":
            parts.append("t" if i == 1 else f"t^{i}")
        else:
            parts.append(f"{cs}*t" if i == 1 else f"{cs}*t^{i}")
    return _join_signed(parts)


_TERM_RE = re.compile(
    r"^\s*(?P<coef>-?\d+(?:/\d+)?)?\s*\*?\s*(?:t(?:\^(?:\((?P<pexp>-?\d+(?:/\d+)?)\)|(?P<exp>-?\d+(?:/\d+)?)))?)?\s*$"
)


def _split_terms(text: str):
    """Split on top-level + and -, keeping signs; parentheses are respected."""
    terms, depth, cur, sign = [], 0, "", 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            terms.append((sign, cur))
            cur, sign = "", (1 if ch == "+" else -1)
            continue
        if depth == 0 and ch in "+-" and not cur.strip():
            sign *= 1 if ch == "+" else -1
            continue
        cur += ch
    if cur.strip():
        terms.append((sign, cur))
    return terms


def _parse_term(field, sign, body):
    """Parse one product term into (exponent: Fraction, scalar)."""
    m = _TERM_RE.match(body)
    if not m or (m.group("coef") is None and "t" not in body):
        raise ParseError(f"bad term {body!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if "t" in body:
        es = m.group("pexp") or m.group("exp")
        exp = Fraction(es) if es else Fraction(1)
    else:
        exp = Fraction(0)
    return exp, field.coerce(sign * coef)


def _strip_parens(text: str) -> str:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1].strip()
    return text


def tp_parse(field, text: str):
    """Parse a polynomial in t with integer exponents."""
    text = text.strip()
    if text == "0" or not text:
        return []
    coeffs = {}
    for sign, body in _split_terms(text):
        exp, sc = _parse_term(field, sign, body)
        if exp.denominator != 1 or exp < 0:
            raise ParseError(f"polynomial exponent must be a nonnegative integer: {body!r}")
        n = int(exp)
        coeffs[n] = field.add(coeffs.get(n, field.zero()), sc)
    if not coeffs:
        return []
    out = [field.zero()] * (max(coeffs) + 1)
    for n, sc in coeffs.items():
        out[n] = sc
    return tp_trim(field, out)


# ---------------------------------------------------------------------------
# RatFunc: exact elements of K = k(t)
# ---------------------------------------------------------------------------

class RatFunc:
    """A reduced fraction of polynomials in t; denominator monic and nonzero."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: BaseField, num, den=None):
        if den is None:
            den = [field.one()]
        num, den = tp_trim(field, list(num)), tp_trim(field, list(den))
        if tp_is_zero(den):
            raise ZeroDivisionError("zero denominator")
        if tp_deg(den) > 0:
            g = tp_gcd(field, num, den)
            if not tp_is_zero(num) and tp_deg(g) >= 0:
                num = tp_divmod(field, num, g)[0]
                den = tp_divmod(field, den, g)[0]
        if den[-1] != field.one():
            lead = field.inv(den[-1])
            num = tp_scalar(field, num, lead)
            den = tp_scalar(field, den, lead)
        self.field = field
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(field: BaseField) -> "RatFunc":
        return RatFunc(field, [])

    @staticmethod
    def one(field: BaseField) -> "RatFunc":
        return RatFunc(field, [field.one()])

    @staticmethod
    def constant(field: BaseField, c) -> "RatFunc":
        return RatFunc(field, [field.coerce(c)])

    @staticmethod
    def t_power(field: BaseField, n: int) -> "RatFunc":
        if n >= 0:
            return RatFunc(field, [field.zero()] * n + [field.one()])
        return RatFunc(field, [field.one()], [field.zero()] * (-n) + [field.one()])

    @staticmethod
    def from_text(field: BaseField, text: str) -> "RatFunc":
        """Parse "num" or "num / den" (the fraction slash must be spaced;
        scalar fractions like 3/4 are written without spaces)."""
        text = text.strip()
        if " / " in text:
            num_s, den_s = text.split(" / ", 1)
            return RatFunc(field, tp_parse(field, _strip_parens(num_s)),
                           tp_parse(field, _strip_parens(den_s)))
        return RatFunc(field, tp_parse(field, _strip_parens(text)))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return tp_is_zero(self.num)

    def is_polynomial(self) -> bool:
        return tp_deg(self.den) == 0

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise WorkbenchError("base field mismatch")

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        f = self.field
        num = tp_add(f, tp_mul(f, self.num, other.den), tp_mul(f, other.num, self.den))
        return RatFunc(f, num, tp_mul(f, self.den, other.den))

    def __neg__(self):
        return RatFunc(self.field, tp_neg(self.field, self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        f = self.field
        return RatFunc(f, tp_mul(f, self.num, other.num), tp_mul(f, self.den, other.den))

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        f = self.field
        return RatFunc(f, tp_mul(f, self.num, other.den), tp_mul(f, self.den, other.num))

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.one(self.field) / self ** (-n)
        out = RatFunc.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.field, tuple(self.num), tuple(self.den)))

    # -- valuation ----------------------------------------------------------

    def val(self) -> GroupVal:
        """Exact t-adic valuation; PosInf for the zero element."""
        on = tp_ord(self.field, self.num)
        if on is None:
            return GroupVal.posinf()
        return GroupVal.fin(on - tp_ord(self.field, self.den))

    # -- conversion -----------------------------------------------------------

    def to_series(self, prec) -> "PuiseuxSeries":
        """Series expansion to precision ``prec``; val is preserved exactly."""
        return coerce(self, prec)

    def to_text(self) -> str:
        if self.is_polynomial():
            return tp_text(self.field, self.num)
        return f"({tp_text(self.field, self.num)}) / ({tp_text(self.field, self.den)})"

    def __repr__(self):
        return f"RatFunc({self.to_text()})"


# ---------------------------------------------------------------------------
# PuiseuxSeries
# ---------------------------------------------------------------------------

class PuiseuxSeries:
    """Truncated series in t^(1/ram) with exact scalars and a precision cap.

    ``coeffs`` maps lattice keys n to nonzero scalars, the coefficient of
    t^(n/ram); every key satisfies n/ram < prec.  ``prec`` is a Fraction or
    None, None meaning infinite precision (exactly known element).
    """

    __slots__ = ("field", "ram", "coeffs", "prec")

    def __init__(self, field: BaseField, ram: int, coeffs: dict, prec: Optional[Fraction]):
        self.field = field
        self.ram = ram
        self.coeffs = coeffs
        self.prec = prec
        self._normalize()

    def _normalize(self):
        f = self.field
        dead = [n for n, c in self.coeffs.items() if f.is_zero(c)]
        for n in dead:
            del self.coeffs[n]
        if self.prec is not None:
            dead = [n for n in self.coeffs if Fraction(n, self.ram) >= self.prec]
            for n in dead:
                del self.coeffs[n]
        if not self.coeffs:
            self.ram = 1
            return
        g = self.ram
        for n in self.coeffs:
            g = math.gcd(g, n)
            if g == 1:
                break
        if g > 1:
            self.coeffs = {n // g: c for n, c in self.coeffs.items()}
            self.ram //= g

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field: BaseField) -> "PuiseuxSeries":
        """The distinguished exact zero (infinite precision)."""
        return PuiseuxSeries(field, 1, {}, None)

    @staticmethod
    def unknown_zero(field: BaseField, prec) -> "PuiseuxSeries":
        """Empty support under a finite cap: not known to be zero."""
        return PuiseuxSeries(field, 1, {}, Fraction(prec))

    @staticmethod
    def one(field: BaseField, prec=None) -> "PuiseuxSeries":
        return PuiseuxSeries.constant(field, field.one(), prec)

    @staticmethod
    def constant(field: BaseField, c, prec=None) -> "PuiseuxSeries":
        c = field.coerce(c)
        prec = None if prec is None else Fraction(prec)
        if field.is_zero(c):
            return PuiseuxSeries(field, 1, {}, prec)
        return PuiseuxSeries(field, 1, {0: c}, prec)

    @staticmethod
    def from_terms(field: BaseField, terms: dict, prec=None) -> "PuiseuxSeries":
        """Build from {exponent (Fraction-like): scalar-like}."""
        exps = {Fraction(e): field.coerce(c) for e, c in terms.items()}
        ram = 1
        for e in exps:
            ram = ram * e.denominator // math.gcd(ram, e.denominator)
        coeffs = {}
        for e, c in exps.items():
            n = int(e * ram)
            if n in coeffs:
                c = field.add(coeffs[n], c)
            coeffs[n] = c
        return PuiseuxSeries(field, ram, coeffs, None if prec is None else Fraction(prec))

    @staticmethod
    def t_power(field: BaseField, exp, prec=None) -> "PuiseuxSeries":
        return PuiseuxSeries.from_terms(field, {Fraction(exp): field.one()}, prec)

    # -- predicates -----------------------------------------------------------

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    def is_exact(self) -> bool:
        return self.prec is None

    def support(self):
        return sorted(Fraction(n, self.ram) for n in self.coeffs)

    def coeff_at(self, exp) -> object:
        exp = Fraction(exp)
        n = exp * self.ram
        if n.denominator != 1:
            return self.field.zero()
        return self.coeffs.get(int(n), self.field.zero())

    # -- valuation ------------------------------------------------------------

    def val(self) -> GroupVal:
        """Fin(least support exponent); PosInf only for the exact zero.

        Raises PrecisionExhausted for an unknown-zero (empty support under a
        finite cap): the caller must not treat it as zero.
        """
        if self.coeffs:
            return GroupVal.fin(Fraction(min(self.coeffs), self.ram))
        if self.prec is None:
            return GroupVal.posinf()
        raise PrecisionExhausted(
            f"series indistinguishable from 0 at precision O(t^{self.prec})")

    def val_lower_bound(self) -> Optional[Fraction]:
        """A guaranteed lower bound for the valuation; None means +inf."""
        if self.coeffs:
            return Fraction(min(self.coeffs), self.ram)
        return self.prec  # None = exact zero = +inf

    def residue(self):
        """Coefficient at exponent 0; requires val >= 0 (decidably)."""
        lb = self.val_lower_bound()
        if lb is not None and self.coeffs and lb < 0:
            raise NegativeValuation(f"residue of element with valuation {lb}")
        if not self.coeffs and self.prec is not None and self.prec <= 0:
            raise PrecisionExhausted("constant term not determined at this precision")
        return self.coeff_at(0)

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise WorkbenchError("base field mismatch")

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        self._check(other)
        f = self.field
        e = self.ram * other.ram // math.gcd(self.ram, other.ram)
        s1, s2 = e // self.ram, e // other.ram
        coeffs = {n * s1: c for n, c in self.coeffs.items()}
        for n, c in other.coeffs.items():
            k = n * s2
            coeffs[k] = f.add(coeffs.get(k, f.zero()), c)
        prec = _min_prec(self.prec, other.prec)
        return PuiseuxSeries(f, e, coeffs, prec)

    def __neg__(self):
        f = self.field
        return PuiseuxSeries(f, self.ram, {n: f.neg(c) for n, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        self._check(other)
        f = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return PuiseuxSeries.zero(f)
        v1, v2 = self.val_lower_bound(), other.val_lower_bound()
        prec = _min_prec(
            None if self.prec is None else self.prec + v2,
            None if other.prec is None else other.prec + v1,
        )
        e = self.ram * other.ram // math.gcd(self.ram, other.ram)
        s1, s2 = e // self.ram, e // other.ram
        cap = None if prec is None else prec * e
        coeffs = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                k = n1 * s1 + n2 * s2
                if cap is not None and k >= cap:
                    continue
                p = f.mul(c1, c2)
                coeffs[k] = f.add(coeffs.get(k, f.zero()), p)
        return PuiseuxSeries(f, e, coeffs, prec)

    def scalar_mul(self, c) -> "PuiseuxSeries":
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return PuiseuxSeries.zero(f)
        return PuiseuxSeries(f, self.ram, {n: f.mul(x, c) for n, x in self.coeffs.items()}, self.prec)

    def shift(self, exp) -> "PuiseuxSeries":
        """Multiply by the exact monomial t^exp."""
        exp = Fraction(exp)
        e = self.ram * exp.denominator // math.gcd(self.ram, exp.denominator)
        s = e // self.ram
        d = int(exp * e)
        coeffs = {n * s + d: c for n, c in self.coeffs.items()}
        prec = None if self.prec is None else self.prec + exp
        return PuiseuxSeries(self.field, e, coeffs, prec)

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if n < 0:
            return invert(self) ** (-n)
        out = PuiseuxSeries.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def truncate(self, prec) -> "PuiseuxSeries":
        """Weaken the precision cap to ``prec`` (must not exceed current prec)."""
        prec = Fraction(prec)
        if self.prec is not None and prec > self.prec:
            raise PrecisionExhausted(f"cannot extend precision {self.prec} to {prec}")
        return PuiseuxSeries(self.field, self.ram, dict(self.coeffs), prec)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.field == other.field and self.ram == other.ram
                and self.coeffs == other.coeffs and self.prec == other.prec)

    def __hash__(self):
        return hash((self.field, self.ram, tuple(sorted(self.coeffs.items())), self.prec))

    # -- text ------------------------------------------------------------------

    def to_text(self) -> str:
        f = self.field
        parts = []
        for e in self.support():
            cs = f.scalar_text(self.coeff_at(e))
            if e == 0:
                parts.append(cs)
                continue
            if e == 1:
                tpart = "t"
            elif e.denominator == 1:
                tpart = f"t^{e}"
            else:
                tpart = f"t^({e})"
            parts.append(tpart if cs == "1" else f"{cs}*{tpart}")
        if self.prec is not None:
            p = self.prec
            parts.append(f"O(t^({p}))" if p.denominator != 1 else f"O(t^{p})")
        return _join_signed(parts) if parts else "0"

    def __repr__(self):
        return f"PuiseuxSeries({self.to_text()})"

    @staticmethod
    def from_text(field: BaseField, text: str) -> "PuiseuxSeries":
        text = text.strip()
        if text == "0":
            return PuiseuxSeries.zero(field)
        prec = None
        m = re.search(r"O\(\s*t(?:\^\(?(-?\d+(?:/\d+)?)\)?)?\s*\)\s*$", text)
        if m:
            prec = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            text = text[: m.start()].rstrip().rstrip("+").rstrip()
        terms = {}
        if text:
            for sign, body in _split_terms(text):
                exp, sc = _parse_term(field, sign, body)
                if exp in terms:
                    sc = field.add(terms[exp], sc)
                terms[exp] = sc
        return PuiseuxSeries.from_terms(field, terms, prec)


def _min_prec(p1: Optional[Fraction], p2: Optional[Fraction]) -> Optional[Fraction]:
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    return min(p1, p2)


# ---------------------------------------------------------------------------
# module operations
# ---------------------------------------------------------------------------

def invert(s: PuiseuxSeries, prec=None) -> PuiseuxSeries:
    """Multiplicative inverse with the guaranteed relative precision.

    For a series with cap p and valuation v the result carries cap p - 2v.
    Exact inputs need a target: monomials invert exactly, otherwise ``prec``
    (default O(t^64)) bounds the absolute precision of the result.
    """
    f = s.field
    v = s.val()  # raises PrecisionExhausted for unknown-zero
    if v.is_inf:
        raise ZeroDivisionError("inverse of the exact zero series")
    v0 = v.q
    if s.is_exact() and len(s.coeffs) == 1:
        n, c = next(iter(s.coeffs.items()))
        return PuiseuxSeries.from_terms(f, {-Fraction(n, s.ram): f.inv(c)})
    if s.prec is not None:
        work_prec = s.prec
        out_prec = s.prec - 2 * v0
    else:
        target = DEFAULT_PREC if prec is None else Fraction(prec)
        work_prec = target + 2 * v0
        out_prec = target
    e = s.ram
    # s = c * t^v0 * (1 + u); invert the unit by coefficient recursion
    shift0 = int(v0 * e)
    c0 = s.coeffs[shift0]
    inv_c0 = f.inv(c0)
    u = {n - shift0: f.mul(c, inv_c0) for n, c in s.coeffs.items() if n != shift0}
    rel_keys = int(math.ceil((work_prec - v0) * e))  # relative lattice budget
    v_coeffs = {0: f.one()}
    for n in range(1, rel_keys):
        acc = f.zero()
        for k, uc in u.items():
            if 0 < k <= n and (n - k) in v_coeffs:
                acc = f.add(acc, f.mul(uc, v_coeffs[n - k]))
        if not f.is_zero(acc):
            v_coeffs[n] = f.neg(acc)
    out = {n - shift0: f.mul(c, inv_c0) for n, c in v_coeffs.items()}
    return PuiseuxSeries(f, e, out, out_prec)


def coerce(r: RatFunc, prec) -> PuiseuxSeries:
    """Embed K into its completion: expand r to the requested precision.

    The valuation of the result equals the exact t-adic valuation of r.
    """
    f = r.field
    prec = Fraction(prec)
    if r.is_zero():
        return PuiseuxSeries.zero(f)
    a = tp_ord(f, r.num)
    b = tp_ord(f, r.den)
    num = r.num[a:]
    den = r.den[b:]
    v0 = a - b
    nterms = int(math.ceil(prec - v0))
    if nterms <= 0:
        return PuiseuxSeries.unknown_zero(f, prec)
    # power series long division num/den, den[0] != 0
    inv_d0 = f.inv(den[0])
    q = []
    rem = list(num) + [f.zero()] * max(0, nterms - len(num))
    for i in range(nterms):
        c = f.mul(rem[i], inv_d0)
        q.append(c)
        if not f.is_zero(c):
            for j in range(1, min(len(den), nterms - i)):
                rem[i + j] = f.sub(rem[i + j], f.mul(c, den[j]))
    coeffs = {i + v0: c for i, c in enumerate(q) if not f.is_zero(c)}
    return PuiseuxSeries(f, 1, coeffs, prec)


def truncate_to_ratfunc(s: PuiseuxSeries, cutoff) -> RatFunc:
    """The polynomial part of s below ``cutoff``, as an element of K.

    Requires ram = 1 and nonnegative support; v(s - result) >= cutoff.
    """
    cutoff = Fraction(cutoff)
    if s.ram != 1:
        raise RamifiedInput(f"ramification index {s.ram} > 1")
    if s.coeffs and min(s.coeffs) < 0:
        raise NegativeSupport("support dips below 0; factor out the pole first")
    if s.prec is not None and cutoff > s.prec:
        raise PrecisionExhausted(f"cutoff {cutoff} exceeds precision {s.prec}")
    f = s.field
    kept = {n: c for n, c in s.coeffs.items() if n < cutoff}
    if not kept:
        return RatFunc.zero(f)
    out = [f.zero()] * (max(kept) + 1)
    for n, c in kept.items():
        out[n] = c
    return RatFunc(f, out)


def val_of_difference(s1: PuiseuxSeries, s2: PuiseuxSeries) -> GroupVal:
    """val(s1 - s2); PrecisionExhausted when undecidable at the shared cap."""
    return (s1 - s2).val()
