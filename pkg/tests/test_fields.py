from fractions import Fraction

import pytest

from cmcurves.fields import (
    GF5,
    GF7,
    QQ,
    BadFieldParameter,
    DualField,
    DualNotInvertible,
    PrimeField,
    RationalFunctionField,
    ZeroInversion,
    field_from_name,
    up_gcd,
    up_roots,
)


def _random_element(field, rng):
    if field is QQ:
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))
    if isinstance(field, PrimeField):
        return rng.randrange(field.p)
    if isinstance(field, RationalFunctionField):
        num = tuple(Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 3)))
        den = tuple(Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(0, 2))) + (
            Fraction(1),
        )
        return field.make(num, den)
    if isinstance(field, DualField):
        return field.make(
            _random_element(field.base, rng), _random_element(field.base, rng)
        )
    raise AssertionError


@pytest.mark.parametrize(
    "field",
    [QQ, GF5, GF7, RationalFunctionField(QQ), DualField(QQ), DualField(GF7)],
    ids=lambda f: f.name,
)
def test_field_axioms_on_random_triples(field, rng):
    for _ in range(40):
        a, b, c = (_random_element(field, rng) for _ in range(3))
        lhs = field.add(field.add(a, b), c)
        rhs = field.add(a, field.add(b, c))
        assert lhs == rhs
        assert field.mul(a, field.add(b, c)) == field.add(
            field.mul(a, b), field.mul(a, c)
        )
        assert field.add(a, field.neg(a)) == field.zero
        try:
            inv = field.inv(a)
        except ZeroInversion:
            continue
        assert field.mul(a, inv) == field.one


def test_rational_inverse():
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroInversion):
        QQ.inv(Fraction(0))


def test_prime_field_inverse():
    assert GF7.inv(3) == 5
    assert GF7.mul(3, 5) == 1
    with pytest.raises(ZeroInversion):
        GF7.inv(0)


def test_dual_number_inverse():
    D = DualField(QQ)
    x = D.make(Fraction(1), Fraction(2))
    assert D.inv(x) == D.make(Fraction(1), Fraction(-2))
    assert D.mul(x, D.inv(x)) == D.one
    with pytest.raises(DualNotInvertible):
        D.inv(D.make(Fraction(0), Fraction(5)))


def test_dual_epsilon_squares_to_zero(rng):
    D = DualField(QQ)
    for _ in range(20):
        a = D.make(Fraction(0), Fraction(rng.randint(-9, 9)))
        b = D.make(Fraction(0), Fraction(rng.randint(-9, 9)))
        assert D.mul(a, b) == D.zero


def test_small_characteristics_rejected():
    with pytest.raises(BadFieldParameter):
        PrimeField(2)
    with pytest.raises(BadFieldParameter):
        PrimeField(3)
    with pytest.raises(BadFieldParameter):
        PrimeField(10)


def test_rational_canonicalization():
    assert QQ.canonical(Fraction(4, 6)) == Fraction(2, 3)


def test_rational_function_cancellation():
    F = RationalFunctionField(QQ)
    # (t^2 - 1)/(t - 1) -> t + 1
    x = F.make((Fraction(-1), Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1)))
    assert x == F.make((Fraction(1), Fraction(1)), (Fraction(1),))
    assert F.canonical(x) == x


def test_rational_function_specialization():
    F = RationalFunctionField(QQ)
    x = F.div(F.one, F.add(F.t, F.one))  # 1/(t+1)
    assert F.evaluate(x, Fraction(1)) == Fraction(1, 2)
    with pytest.raises(ZeroInversion):
        F.evaluate(x, Fraction(-1))


def test_dual_zero_canonical():
    D = DualField(QQ)
    assert D.canonical(D.make(Fraction(0), Fraction(0))) == D.zero
    assert D.is_zero(D.make(Fraction(0), Fraction(0)))


def test_division_log_collects_roots():
    log = set()
    F = RationalFunctionField(QQ, division_log=log)
    t = F.t
    F.inv(t)
    F.inv(F.sub(t, F.from_int(3)))
    F.inv(F.from_int(5))  # constants contribute nothing
    assert log == {Fraction(0), Fraction(3)}


def test_up_roots_over_q_and_gf():
    # (t - 2)(2t + 1)
    poly = (Fraction(-2), Fraction(-3), Fraction(2))
    assert set(up_roots(QQ, poly)) == {Fraction(2), Fraction(-1, 2)}
    # t^2 - 2 has no roots over Q, two over GF(7)
    assert up_roots(QQ, (Fraction(-2), Fraction(0), Fraction(1))) == []
    assert set(up_roots(GF7, (5, 0, 1))) == {3, 4}


def test_up_gcd_monic():
    f = (Fraction(-1), Fraction(0), Fraction(1))  # t^2 - 1
    g = (Fraction(-1), Fraction(1))  # t - 1
    assert up_gcd(QQ, f, g) == (Fraction(-1), Fraction(1))


def test_field_from_name():
    assert field_from_name("Q") is QQ or field_from_name("Q") == QQ
    assert field_from_name("GF(11)") == PrimeField(11)
    assert field_from_name("GF5") == GF5
    assert field_from_name("Q(t)") == RationalFunctionField(QQ)
    assert field_from_name("Qt") == RationalFunctionField(QQ)
    assert field_from_name("Q[eps]") == DualField(QQ)
    assert field_from_name("GF(7)(t)") == RationalFunctionField(GF7)
    with pytest.raises(BadFieldParameter):
        field_from_name("R")


def test_square_and_cube_helpers():
    assert QQ.is_square(Fraction(9, 4)) and QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert not QQ.is_square(Fraction(2))
    assert QQ.is_cube(Fraction(-27, 8)) and QQ.cbrt(Fraction(-27, 8)) == Fraction(-3, 2)
    assert not QQ.is_cube(Fraction(2))
    assert GF7.is_square(2) and GF7.mul(GF7.sqrt(2), GF7.sqrt(2)) == 2
