import random
from fractions import Fraction
from math import factorial

import pytest

from valwb.errors import (
    NegativeSupport,
    NegativeValuation,
    PrecisionExhausted,
    RamifiedInput,
)
from valwb.field import GF, QQ
from valwb.groupval import GroupVal
from valwb.series import PuiseuxSeries, RatFunc, coerce, invert, truncate_to_ratfunc

F2 = GF(2)


def S(field, terms, prec=None):
    return PuiseuxSeries.from_terms(field, {Fraction(k): v for k, v in terms.items()},
                                    None if prec is None else Fraction(prec))


def test_val():
    assert S(QQ, {2: 1, 3: 1}, 10).val() == GroupVal.fin(2)
    assert S(QQ, {Fraction(1, 2): 1, 1: 1}, 5).val() == GroupVal.fin(Fraction(1, 2))
    with pytest.raises(PrecisionExhausted):
        PuiseuxSeries.unknown_zero(QQ, Fraction(8)).val()
    assert PuiseuxSeries.zero(QQ).val().is_inf


def test_mul_geometric_identity():
    a = S(QQ, {0: 1, 1: 1}, 3)
    b = S(QQ, {0: 1, 1: -1}, 3)
    p = a * b
    assert p.coeff_at(Fraction(0)) == 1 and p.coeff_at(Fraction(2)) == -1
    assert p.coeff_at(Fraction(1)) == QQ.zero()
    assert p.prec == Fraction(3)


def test_add_cancellation():
    a = S(QQ, {Fraction(1, 2): 1}, 2)
    b = S(QQ, {Fraction(1, 2): -1, 1: 1}, 2)
    s = a + b
    assert s.val() == GroupVal.fin(1)
    assert s.prec == Fraction(2)


def test_char2_tower_difference():
    a = S(F2, {1: 1, 2: 1, 4: 1, 8: 1}, 9)
    a1 = S(F2, {1: 1, 2: 1}, 9)
    d = a - a1
    assert d.support() == [Fraction(4), Fraction(8)]
    assert d.val() == GroupVal.fin(4)  # v(a - a_1) = p^2 for p = 2


def test_mul_precision_rule():
    # prec = min(p1 + v2, p2 + v1)
    a = S(QQ, {1: 1}, 5)
    b = S(QQ, {2: 1}, 7)
    assert (a * b).prec == Fraction(7)
    assert (a * b).val() == GroupVal.fin(3)


def test_invert():
    s = invert(S(QQ, {0: 1, 1: -1}, 4))
    assert [s.coeff_at(Fraction(n)) for n in range(4)] == [1, 1, 1, 1]
    m = invert(S(QQ, {1: 1}, 5))
    assert m.val() == GroupVal.fin(-1) and m.prec == Fraction(3)
    u = invert(S(QQ, {0: 2, 1: 1}, 3))
    assert [u.coeff_at(Fraction(n)) for n in range(3)] == \
        [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8)]
    # oracle: multiply back
    prod = S(QQ, {0: 2, 1: 1}, 3) * u
    assert prod.coeff_at(Fraction(0)) == 1
    assert all(prod.coeff_at(Fraction(n)) == QQ.zero() for n in (1, 2))


def test_coerce():
    r = RatFunc(QQ, [QQ.one()], [QQ.one(), QQ.coerce(-1)])  # 1/(1-t)
    s = coerce(r, Fraction(4))
    assert [s.coeff_at(Fraction(n)) for n in range(4)] == [1, 1, 1, 1]
    r2 = RatFunc(QQ, [0, 0, 1], [1, 1])  # t^2/(1+t)
    s2 = coerce(r2, Fraction(5))
    assert [s2.coeff_at(Fraction(n)) for n in range(2, 5)] == [1, -1, 1]
    assert coerce(RatFunc.zero(QQ), Fraction(5)).is_exact_zero()


def test_coerce_homomorphism_random():
    rng = random.Random(3)
    for _ in range(50):
        r1 = RatFunc(QQ, [rng.randint(-3, 3) for _ in range(3)] + [1],
                     [rng.randint(-2, 2), 1])
        r2 = RatFunc(QQ, [rng.randint(-3, 3) for _ in range(2)] + [1])
        p = Fraction(12)
        lhs = coerce(r1 * r2, p)
        rhs = coerce(r1, p) * coerce(r2, p)
        diff = lhs - rhs
        assert not diff.coeffs  # agree through the shared precision


def test_truncate_to_ratfunc():
    a = PuiseuxSeries.from_terms(
        QQ, {Fraction(n): Fraction(1, factorial(n)) for n in range(20)}, Fraction(20))
    r = truncate_to_ratfunc(a, Fraction(6))
    expect = [Fraction(1, factorial(n)) for n in range(6)]
    assert r.num == expect and r.den == [Fraction(1)]
    # v(s - result) >= cutoff
    d = a - r.to_series(Fraction(20))
    assert d.val() == GroupVal.fin(6)
    assert truncate_to_ratfunc(PuiseuxSeries.zero(QQ), Fraction(3)).is_zero()
    s = S(QQ, {1: 1, 4: 1}, 10)
    r2 = truncate_to_ratfunc(s, Fraction(4))
    assert r2 == RatFunc.t_power(QQ, 1)
    assert (s - r2.to_series(Fraction(10))).val() == GroupVal.fin(4)


def test_truncate_errors():
    with pytest.raises(RamifiedInput):
        truncate_to_ratfunc(PuiseuxSeries.t_power(QQ, Fraction(1, 2)), Fraction(2))
    with pytest.raises(NegativeSupport):
        truncate_to_ratfunc(PuiseuxSeries.t_power(QQ, -1), Fraction(2))
    with pytest.raises(PrecisionExhausted):
        truncate_to_ratfunc(S(QQ, {1: 1}, 3), Fraction(5))


def test_residue():
    assert S(QQ, {0: 3, 1: 1}, 2).residue() == 3
    assert S(QQ, {1: 1}, 2).residue() == QQ.zero()
    assert S(F2, {1: 1, 2: 1, 4: 1}, 9).residue() == F2.zero()
    with pytest.raises(NegativeValuation):
        S(QQ, {-1: 1}, 2).residue()


def test_val_laws_random():
    rng = random.Random(11)
    for _ in range(100):
        field = QQ if rng.random() < 0.5 else F2
        def draw():
            terms = {Fraction(rng.randint(0, 8), rng.choice((1, 2))):
                     rng.randint(1, 4) for _ in range(4)}
            return PuiseuxSeries.from_terms(field, terms, Fraction(20))
        a, b = draw(), draw()
        if not a.coeffs or not b.coeffs:
            continue
        assert (a * b).val() == a.val() + b.val()
        s = a + b
        if s.coeffs:
            assert s.val() >= min(a.val(), b.val())
            if a.val() != b.val():
                assert s.val() == min(a.val(), b.val())


def test_ram_normalization():
    s = PuiseuxSeries.from_terms(QQ, {Fraction(2, 4): 1})
    assert s.ram == 2
    t = PuiseuxSeries.from_terms(QQ, {Fraction(4, 2): 1})
    assert t.ram == 1


def test_text_round_trip():
    for s in (S(QQ, {Fraction(1, 2): Fraction(3, 2), 2: -1}, 7),
              PuiseuxSeries.zero(QQ),
              PuiseuxSeries.unknown_zero(QQ, Fraction(5)),
              S(F2, {1: 1, 4: 1}, None)):
        assert PuiseuxSeries.from_text(s.field, s.to_text()) == s


def test_ratfunc_round_trip_and_val():
    r = RatFunc.from_text(QQ, "(1 + t^2) / (1 + t)")
    assert r.val() == GroupVal.fin(0)
    assert RatFunc.from_text(QQ, r.to_text()) == r
    assert RatFunc.t_power(QQ, -2).val() == GroupVal.fin(-2)
    assert RatFunc.zero(QQ).val().is_inf
