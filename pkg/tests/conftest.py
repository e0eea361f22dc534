#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" py.test test configuration and common fixtures. """
import random
from collections import namedtuple
from fractions import Fraction

import mpmath
import pytest


@pytest.fixture
def config(monkeypatch):
    """ Default settings, without environment overrides. """
    from fracsplit import init_config, APP_CONFIG_ENVIRON_NAME
    monkeypatch.delenv(APP_CONFIG_ENVIRON_NAME, raising=False)
    monkeypatch.delenv('FRACSPLIT_RTOL', raising=False)
    return init_config()


@pytest.fixture
def catcher():
    Recv = namedtuple('Recv', ('sender', 'args'))

    class _catcher(object):
        def __init__(self, signal):
            signal.connect(self)
            self.caught = []

        def __call__(self, sender, **kwargs):
            self.caught.append(Recv(sender, kwargs))
    return _catcher


@pytest.fixture
def rng():
    """ Seeded random source. """
    return random.Random(20161017)


def random_rational(rng, low, high, denominator=4):
    """ A random multiple of 1/denominator in [low, high]. """
    return Fraction(rng.randint(int(low * denominator),
                                int(high * denominator)), denominator)


def random_nonzero(rng, low, high, denominator=4):
    value = Fraction(0)
    while value == 0:
        value = random_rational(rng, low, high, denominator)
    return value


def random_cell_fde(rng, m, allow_integer_orders=False, bound=3,
                    monic=False):
    """ Random equation with ``k-1 < alpha_k <= k``.

    Orders ``alpha_k = k`` for ``k < m`` are avoided unless asked for.
    Coefficients are drawn from ``[-bound, bound]``; ``monic`` fixes
    ``a_m = 1``.
    """
    from fracsplit.splitter import MultiTermFDE
    alpha = []
    for k in range(1, m + 1):
        q = rng.choice((2, 3, 4, 5, 6, 8))
        top = q if (k == m or allow_integer_orders) else q - 1
        alpha.append(k - 1 + Fraction(rng.randint(1, top), q))
    a = [random_rational(rng, -bound, bound) for _ in range(m)]
    a.append(Fraction(1) if monic else random_nonzero(rng, -bound, bound))
    ics = [random_rational(rng, -2, 2) for _ in range(m)]
    return MultiTermFDE(a, alpha, ics)


def random_same_cell_fde(rng, m, p):
    """ Random equation with ``p < alpha_1 < .. < alpha_m <= p+1``. """
    from fracsplit.splitter import MultiTermFDE
    q = 12
    numerators = sorted(rng.sample(range(1, q + 1), m))
    alpha = [p + Fraction(n, q) for n in numerators]
    a = [random_rational(rng, -3, 3) for _ in range(m)]
    a.append(random_nonzero(rng, -3, 3))
    ics = [random_rational(rng, -2, 2) for _ in range(p + 1)]
    return MultiTermFDE(a, alpha, ics)


@pytest.fixture
def cell_fde(rng):
    return lambda m, **kw: random_cell_fde(rng, m, **kw)


@pytest.fixture
def same_cell_fde(rng):
    return lambda m, p: random_same_cell_fde(rng, m, p)


def _mp(value):
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def ml_oracle(alpha, beta, z, gamma=1, dps=50):
    """ Brute force Mittag-Leffler series in ``dps`` digits. """
    with mpmath.workdps(dps):
        alpha, beta, gamma = _mp(alpha), _mp(beta), _mp(gamma)
        z = mpmath.mpf(z)
        eps = mpmath.mpf(10) ** -30
        total = mpmath.mpf(0)
        ratio = mpmath.mpf(1)
        k = 0
        while True:
            if k:
                ratio *= (gamma + k - 1) / k
            term = ratio * z ** k * mpmath.rgamma(alpha * k + beta)
            total += term
            if k > 10 and abs(term) < eps:
                return float(total)
            k += 1


@pytest.fixture(scope='session')
def oracle():
    """ The high precision series oracle. """
    return ml_oracle
