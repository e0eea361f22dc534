#!/usr/bin/env python
# encoding: utf-8
""" Unit tests for fracsplit.mlf """
import math
import os
from fractions import Fraction

import pytest
import yaml
from scipy.special import comb

from fracsplit import mlf
from fracsplit.errors import DomainError, NonConvergence


RTOL = mlf.DEFAULT_CONTROL.rtol

ORACLE_POINTS = [
    # ml1
    ('1/4', 1, 1.0),
    ('1/4', 1, 0.5),
    ('1/4', 1, -0.5),
    ('1/2', 1, -1.0),
    ('1/2', 1, 2.0),
    ('3/4', 1, -2.0),
    (1, 1, -5.0),
    (1, 1, 5.0),
    ('3/2', 1, -5.0),
    ('3/2', 1, 3.0),
    (2, 1, -5.0),
    (2, 1, 4.0),
    # ml2
    ('1/4', '3/4', 1.0),
    ('1/4', '1/4', 0.5),
    ('1/2', '1/2', -1.0),
    ('1/2', '3/2', 2.0),
    ('3/4', 2, -2.0),
    (1, 2, -5.0),
    ('3/2', '1/2', -3.0),
    (2, 3, 4.0),
]


GOLDEN_FILE = os.path.join(os.path.dirname(__file__), 'data',
                           'ml_golden.yaml')


def load_golden(filename=GOLDEN_FILE):
    """ ``(alpha, beta, z, value)`` rows of the checked in values. """
    with open(filename) as f:
        return [(Fraction(row['alpha']), Fraction(row['beta']),
                 float(row['z']), float(row['value']))
                for row in yaml.safe_load(f)]


GOLDEN = load_golden()


def test_golden_points():
    assert len(GOLDEN) == 20
    assert all(abs(z) <= 5 for _, _, z, _ in GOLDEN)


@pytest.mark.parametrize('alpha,beta,z,value', GOLDEN)
def test_ml2_matches_golden(alpha, beta, z, value):
    assert mlf.ml2(alpha, beta, z) == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize('alpha,beta,z,value',
                         [row for row in GOLDEN if row[1] == 1])
def test_ml1_matches_golden(alpha, beta, z, value):
    assert mlf.ml1(alpha, z) == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize('alpha,beta,z,value', GOLDEN)
def test_oracle_reproduces_golden(oracle, alpha, beta, z, value):
    assert oracle(alpha, beta, z) == pytest.approx(value, rel=1e-14)


@pytest.mark.parametrize('alpha,beta,z', ORACLE_POINTS)
def test_ml2_matches_oracle(oracle, alpha, beta, z):
    expect = oracle(Fraction(alpha), Fraction(beta), z)
    assert mlf.ml2(Fraction(alpha), Fraction(beta), z) == pytest.approx(
        expect, rel=1e-10, abs=1e-14)


@pytest.mark.parametrize('alpha,z,expect', [
    ('1/2', 0.0, 1.0),
    (1, 1.0, math.e),
    (2, 1.0, math.cosh(1.0)),
    (2, -1.0, math.cos(1.0)),
])
def test_ml1_closed_forms(alpha, z, expect):
    assert mlf.ml1(alpha, z) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize('z', [-5.0, -2.5, -1.0, 0.0, 0.5, 1.0, 3.0, 5.0])
def test_ml1_order_one_is_exp(z):
    assert abs(mlf.ml1(1, z) - math.exp(z)) <= 10 * RTOL * math.exp(abs(z))


@pytest.mark.parametrize('alpha', ['1/4', '1/2', 1, '3/2', 2])
@pytest.mark.parametrize('z', [-1.0, -0.5, 0.0, 0.7, 2.0])
def test_ml2_beta_one_is_ml1(alpha, z):
    assert mlf.ml2(alpha, 1, z) == pytest.approx(mlf.ml1(alpha, z),
                                                 rel=2 * RTOL, abs=1e-15)


def test_ml2_exponential_relative():
    assert mlf.ml2(1, 2, 1.0) == pytest.approx(math.e - 1, rel=1e-12)


def test_ml2_quarter_three_quarters(oracle):
    assert mlf.ml2('1/4', '3/4', 1.0) == pytest.approx(
        oracle(Fraction(1, 4), Fraction(3, 4), 1.0), rel=1e-10)


def test_truncation_tightens_with_rtol(oracle):
    expect = oracle(Fraction(1, 2), Fraction(1), 1.5)
    errors = [abs(mlf.ml1('1/2', 1.5, mlf.EvalControl(rtol=rtol)) - expect)
              for rtol in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10)]
    for looser, tighter in zip(errors, errors[1:]):
        assert tighter <= looser + 1e-14


def test_prabhakar_gamma_one_is_ml2():
    for alpha, beta, z in [('1/2', 1, -1.0), ('3/2', '1/2', 2.0),
                           (1, 2, -4.0)]:
        assert mlf.ml_prabhakar(alpha, beta, 1, z) == pytest.approx(
            mlf.ml2(alpha, beta, z), rel=1e-13)


def test_prabhakar_closed_form(oracle):
    # E^2_{1,1}(z) = (1 + z) e^z
    assert mlf.ml_prabhakar(1, 1, 2, 0.0) == 1.0
    value = mlf.ml_prabhakar(1, 1, 2, 0.5)
    assert value == pytest.approx(1.5 * math.exp(0.5), rel=1e-12)
    assert value == pytest.approx(oracle(1, 1, 0.5, gamma=2), rel=1e-10)


def test_prabhakar_oracle(oracle):
    expect = oracle(Fraction(1, 2), Fraction(3, 2), -1.0, gamma=Fraction(5, 2))
    assert mlf.ml_prabhakar('1/2', '3/2', '5/2', -1.0) == pytest.approx(
        expect, rel=1e-10)


@pytest.mark.parametrize('args', [
    (0, 1.0),
    (-1, 1.0),
    ('1/2', 51.0),
    ('1/2', -60.0),
    ('1/2', float('nan')),
])
def test_ml1_domain(args):
    with pytest.raises(DomainError):
        mlf.ml1(*args)


def test_ml2_beta_domain():
    with pytest.raises(DomainError):
        mlf.ml2('1/2', 0, 1.0)


def test_non_convergence():
    with pytest.raises(NonConvergence) as exc:
        mlf.ml1('1/2', 10.0, mlf.EvalControl(k_max=2))
    assert exc.value.exit_code == 3


@pytest.mark.parametrize('rtol,k_max', [(0, 10), (-1e-3, 10), (1e-6, 0),
                                        (1e-6, 2.5)])
def test_eval_control_invalid(rtol, k_max):
    with pytest.raises(DomainError):
        mlf.EvalControl(rtol, k_max)


def test_eval_control_from_config(config):
    config['RTOL'] = 1e-6
    ctrl = mlf.EvalControl.from_config(config)
    assert ctrl.rtol == 1e-6
    assert ctrl.k_max == config['K_MAX']


def test_compositions_order():
    assert mlf.compositions(2, 2).tolist() == [[0, 2], [1, 1], [2, 0]]
    assert mlf.compositions(0, 3).tolist() == [[0, 0, 0]]


@pytest.mark.parametrize('k,n', [(0, 1), (3, 1), (4, 2), (5, 3), (6, 4)])
def test_compositions_count(k, n):
    rows = mlf.compositions(k, n)
    assert len(rows) == comb(k + n - 1, n - 1, exact=True)
    assert (rows.sum(axis=1) == k).all()
    assert (rows >= 0).all()


def test_ml_multi_at_zero():
    spec = mlf.MLSpec(['1/2', '3/2'], 1, [-1, -1])
    assert mlf.ml_multi(spec, 0.0) == 1.0
    spec = mlf.MLSpec(['1/2', '3/2'], 2, [-1, -1])
    assert mlf.ml_multi(spec, 0.0) == pytest.approx(1.0)


def test_ml_multi_single_argument_is_ml2(rng):
    for _ in range(20):
        alpha = Fraction(rng.randint(2, 8), 4)
        beta = Fraction(rng.randint(2, 8), 4)
        scale = Fraction(rng.randint(-4, 8), 4)
        t = rng.choice((0.25, 0.5, 1.0))
        spec = mlf.MLSpec([alpha], beta, [scale])
        z = float(scale) * t ** float(alpha)
        assert mlf.ml_multi(spec, t) == pytest.approx(
            mlf.ml2(alpha, beta, z), rel=2 * RTOL, abs=1e-14)


def test_ml_multi_two_arguments_closed_form():
    # E_{(1,1),1}(z1, z2) = exp(z1 + z2)
    spec = mlf.MLSpec([1, 1], 1, [-1, '1/2'])
    assert mlf.ml_multi(spec, 1.0) == pytest.approx(math.exp(-0.5),
                                                    rel=1e-12)


def test_ml_multi_power_exponents():
    # E_{1,1}(2 t**2) = exp(2 t**2)
    spec = mlf.MLSpec([1], 1, [2], power_exponents=[2])
    assert mlf.ml_multi(spec, 0.5) == pytest.approx(math.exp(0.5), rel=1e-12)


def test_ml_multi_prabhakar_slot():
    spec = mlf.MLSpec([1], 1, [1], gamma=2)
    assert mlf.ml_multi(spec, 0.5) == pytest.approx(1.5 * math.exp(0.5),
                                                    rel=1e-12)


def test_ml_multi_negative_time():
    with pytest.raises(DomainError):
        mlf.ml_multi(mlf.MLSpec([1], 1, [1]), -0.1)


def test_ml_multi_warns_about_cost():
    spec = mlf.MLSpec([1, 2, 3], 1, [0, 0, 0])
    with pytest.warns(RuntimeWarning):
        mlf.ml_multi(spec, 1.0, warn_args=2)


@pytest.mark.parametrize('kwargs', [
    dict(a=[], b=1, scales=[]),
    dict(a=[1, 2], b=1, scales=[1]),
    dict(a=[0], b=1, scales=[1]),
    dict(a=[1], b=-1, scales=[1]),
    dict(a=[1], b=1, scales=[1], power_exponents=[-1]),
    dict(a=[1], b=1, scales=[1], gamma=0),
    dict(a=[1, 2], b=1, scales=[1, 1], gamma=2),
])
def test_mlspec_invalid(kwargs):
    with pytest.raises(DomainError):
        mlf.MLSpec(**kwargs)


def test_mlspec_equality():
    a = mlf.MLSpec(['1/2', '3/2'], 1, [Fraction(-1), Fraction(-1, 2)])
    b = mlf.MLSpec([Fraction(1, 2), Fraction(3, 2)], '1', [-1, '-1/2'])
    assert a == b
    assert hash(a) == hash(b)
    assert a != mlf.MLSpec(['1/2', '3/2'], 2, [-1, '-1/2'])
    assert a.n == 2
    assert a.arguments(1.0) == [-1.0, -0.5]
