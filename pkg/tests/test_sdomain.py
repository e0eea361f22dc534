#!/usr/bin/env python
# encoding: utf-8
""" Unit tests for fracsplit.sdomain """
from fractions import Fraction as F

import pytest

from fracsplit import sdomain
from fracsplit.errors import NotAChain, ShapeError
from fracsplit.mlf import MLSpec
from fracsplit.sdomain import SPoly, SRational
from fracsplit.splitter import (Link, MultiTermFDE, SplitSystem,
                                build_naive_split, build_split_2m1)


def s(exponent, coeff=1):
    return SPoly.monomial(coeff, exponent)


def test_spoly_canonical():
    p = SPoly([(1, '1/2'), (2, 0), (F(-1), F(1, 2)), (3, 2), (0, 5)])
    assert p.terms == ((3, 2), (2, 0))
    assert p.degree() == 2
    assert p.lowest() == 0
    assert p.leading_coefficient() == 3
    assert p.coefficient(0) == 2
    assert p.coefficient('1/2') == 0
    assert SPoly().is_zero()
    assert SPoly().degree() is None


def test_spoly_arithmetic():
    p = s('1/2') + SPoly.constant(1)
    q = s('1/2') - SPoly.constant(1)
    assert p * q == s(1) - SPoly.constant(1)
    assert (p - p).is_zero()
    assert F(1, 2) * p == p * F(1, 2)
    assert p.shift('3/2') == s(2) + s('3/2')
    assert (-p).coefficient(0) == -1


def test_spoly_evaluate():
    assert (s('1/2', 3) + SPoly.constant(1)).evaluate(4) == pytest.approx(7)
    with pytest.raises(ValueError):
        s(1).evaluate(0)


def test_spoly_str():
    assert str(SPoly()) == '0'
    assert str(s('3/2') - SPoly.constant(F(1, 2))) == 's^3/2 - 1/2'
    assert str(s(-1, 2)) == '2*s^-1'


def test_srational_canonical():
    X = SRational(s('1/2', 2), s('3/2', 2) + s('1/2', 4))
    assert X.den == s(1) + SPoly.constant(2)
    assert X.num == SPoly.constant(1)


def test_srational_scaling_invariance():
    X = SRational(s(F(-1, 2)), s(1) + SPoly.constant(3))
    scaled = SRational(s(F(-1, 2)).shift('3/2') * 7,
                       (s(1) + SPoly.constant(3)).shift('3/2') * 7)
    assert X == scaled
    assert sdomain.srational_equal(X, scaled)
    assert hash(X) == hash(scaled)


def test_srational_zero_denominator():
    with pytest.raises(ShapeError):
        SRational(s(1), SPoly())


def test_srational_add():
    one_over_s = SRational(SPoly.constant(1), s(1))
    assert one_over_s + one_over_s == SRational(SPoly.constant(2), s(1))
    mixed = one_over_s + SRational(SPoly.constant(1), s(2))
    assert mixed == SRational(s(1) + SPoly.constant(1), s(2))
    assert one_over_s * 3 == SRational(SPoly.constant(3), s(1))


def test_srational_evaluate():
    X = SRational(SPoly.constant(1), s(1) + SPoly.constant(1))
    assert X.evaluate(1) == pytest.approx(0.5)


def test_initial_value_terms():
    assert sdomain.initial_value_terms('3/2', [2, 5]) == \
        s('1/2', 2) + s('-1/2', 5)
    assert sdomain.initial_value_terms('1/2', [2, 5]) == s('-1/2', 2)


@pytest.mark.parametrize('alpha,lam,x0', [('1/2', -1, 1), ('3/4', 2, 3),
                                          (1, -1, 1)])
def test_fde_laplace_relaxation(alpha, lam, x0):
    fde = MultiTermFDE([-lam, 1], [alpha], [x0])
    X = sdomain.fde_laplace(fde)
    expect = SRational(s(F(alpha) - 1, x0),
                       s(alpha) - SPoly.constant(lam))
    assert X == expect


def test_fde_laplace_two_term():
    # D^alpha x + a1 D^beta x + a0 x = 0, 0 < beta < 1 < alpha < 2
    fde = MultiTermFDE([3, 2, 1], ['1/2', '3/2'], [5, 7])
    X = sdomain.fde_laplace(fde)
    num = (s('1/2', 5) + s('-1/2', 7) + s('-1/2', 2 * 5))
    den = s('3/2') + s('1/2', 2) + SPoly.constant(3)
    assert X == SRational(num, den)


def test_fde_laplace_without_zero_order_term():
    fde = MultiTermFDE([0, 1], [1], [4])
    X = sdomain.fde_laplace(fde)
    assert X == SRational(SPoly.constant(4), s(1))
    assert X == SRational(s(-1, 4), SPoly.constant(1))


def _two_term(alpha, beta, ics, a=(1, 1, 1)):
    return MultiTermFDE(list(a), [beta, alpha], ics)


def test_split_laplace_one_term():
    fde = MultiTermFDE([1, 1], ['1/2'], [1])
    system = build_split_2m1(fde)
    assert sdomain.srational_equal(sdomain.fde_laplace(fde),
                                   sdomain.split_laplace(system))


def test_split_laplace_proper_two_term():
    fde = _two_term(F(3, 2), F(1, 2), [1, 1])
    system = build_split_2m1(fde)
    assert sdomain.split_laplace(system) == sdomain.fde_laplace(fde)


@pytest.mark.parametrize('alpha,beta', [('9/5', '3/10'), ('6/5', '7/10'),
                                        ('3/2', '1/2')])
def test_split_laplace_naive_pair_residual(alpha, beta):
    alpha, beta = F(alpha), F(beta)
    fde = _two_term(alpha, beta, [1, 2])
    X = sdomain.fde_laplace(fde)
    Y = sdomain.split_laplace(build_naive_split(fde, 'two_term_pair'))
    assert not sdomain.srational_equal(X, Y)
    assert sdomain.residual(X, Y) == s(alpha - 2, 2) * X.den


def test_split_laplace_naive_pair_with_start_value():
    alpha, beta = F(6, 5), F(7, 10)
    fde = _two_term(alpha, beta, [1, 2])
    X = sdomain.fde_laplace(fde)
    Y = sdomain.split_laplace(
        build_naive_split(fde, 'two_term_pair', init=[3]))
    missing = s(alpha - 2, 2) - s(alpha - beta - 1, 3)
    assert sdomain.residual(X, Y) == missing * X.den


def test_split_laplace_naive_pair_zero_derivative():
    fde = _two_term(F(6, 5), F(7, 10), [1, 0])
    Y = sdomain.split_laplace(build_naive_split(fde, 'two_term_pair'))
    assert sdomain.srational_equal(sdomain.fde_laplace(fde), Y)


def test_split_laplace_not_a_chain():
    links = [Link(F(1, 2), 0, {0: -1}, [1]), Link(F(1, 2), 1, {0: 1}, [0])]
    with pytest.raises(NotAChain):
        sdomain.split_laplace(SplitSystem(links, 'custom'))


def test_split_laplace_single_link():
    # x'' = 0, x(0) = 1, x'(0) = 3
    Y = sdomain.split_laplace(SplitSystem([Link(2, 0, {}, [1, 3])], 'custom'))
    assert Y == SRational(s(1) + SPoly.constant(3), s(2))


@pytest.mark.parametrize('spec,num,den', [
    (MLSpec([F(1, 2)], 1, [-1]), s('-1/2'), s(0) + s('1/2')),
    (MLSpec(['1/2'], '3/2', [2]), s(-1), s('1/2') - SPoly.constant(2)),
    (MLSpec(['1/2', '3/2'], 1, [-1, -2]), s('1/2'),
     s('3/2') + s(1) + SPoly.constant(2)),
])
def test_ml_laplace(spec, num, den):
    assert sdomain.ml_laplace(spec) == SRational(num, den)


@pytest.mark.parametrize('spec,power', [
    (MLSpec(['1/2'], '1/2', [-1]), None),
    (MLSpec(['1/2'], 1, [-1]), '1/2'),
    (MLSpec(['1/2'], 1, [-1], gamma=2), None),
    (MLSpec(['1/2'], 1, [-1], power_exponents=['1/4']), None),
    (MLSpec(['3/2', '1/2'], 1, [-1, -1]), None),
])
def test_ml_laplace_shape_errors(spec, power):
    with pytest.raises(ShapeError):
        sdomain.ml_laplace(spec, power)


def test_inverse_relaxation():
    X = SRational(s('-1/2'), s('1/2') + SPoly.constant(1))
    terms = sdomain.inverse_laplace_to_ml(X)
    assert len(terms) == 1
    scale, power, spec = terms.terms[0]
    assert scale == 1
    assert power == 0
    assert spec == MLSpec(['1/2'], 1, [-1])


def test_inverse_pure_powers():
    terms = sdomain.inverse_laplace_to_ml(
        SRational(s(-1, 2) + s(-2, 3), SPoly.constant(1)))
    assert terms.evaluate(2.0) == pytest.approx(2 + 3 * 2.0)
    assert terms.laplace() == SRational(s(-1, 2) + s(-2, 3),
                                        SPoly.constant(1))


def test_inverse_rejects_improper_terms():
    with pytest.raises(ShapeError):
        sdomain.inverse_laplace_to_ml(
            SRational(s('1/2'), s('1/2') + SPoly.constant(1)))


def _random_spec(rng):
    n = rng.randint(1, 4)
    a = sorted(rng.sample([F(k, 4) for k in range(1, 13)], n))
    b = rng.choice([F(1), F(5, 4), F(3, 2), F(2), F(5, 2)])
    scales = [F(rng.choice((-1, 1)) * rng.randint(1, 8), 4)
              for _ in range(n)]
    return MLSpec(a, b, scales)


def test_inverse_round_trip(rng):
    for _ in range(100):
        spec = _random_spec(rng)
        X = sdomain.ml_laplace(spec)
        terms = sdomain.inverse_laplace_to_ml(X)
        assert len(terms) == 1
        scale, power, inverted = terms.terms[0]
        assert (scale, power) == (1, spec.b - 1)
        assert inverted == spec
        assert terms.laplace() == X


def test_inverse_of_fde_round_trip(cell_fde):
    for m in (1, 2, 3):
        for _ in range(5):
            X = sdomain.fde_laplace(cell_fde(m))
            if X.num.is_zero():
                continue
            assert sdomain.inverse_laplace_to_ml(X).laplace() == X


def test_mltermsum_empty():
    empty = sdomain.MLTermSum([])
    assert empty.evaluate(1.0) == 0.0
    assert empty.laplace().num.is_zero()
