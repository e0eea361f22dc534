# encoding: utf-8
""" Mittag-Leffler functions.

Numerical evaluation of the one-parameter, two-parameter, multinomial and
Prabhakar Mittag-Leffler functions by controlled truncation of their defining
series.

Truncation rule
---------------
A series is summed term by term (for the multinomial function, a "term" is the
sum over all multi-indices of one outer index ``k``) until three consecutive
terms each satisfy ``|term| < rtol * |partial sum|``. Terms of these series are
not monotone for negative arguments, so a single small term is not enough.

Every term is formed in log space (``z**k / Gamma(x)`` as
``exp(k*log|z| - gammaln(x))`` with an explicit sign), so large powers and large
Gamma values never overflow before the truncation rule sees them.

Arguments with ``|z| > Z_LIMIT`` are rejected with
:py:class:`fracsplit.errors.DomainError`; naive summation loses all precision
long before that.

"""
import functools
import itertools
import math
import numbers
from collections import namedtuple
from warnings import warn

import numpy as np
import structlog
from scipy.special import gammaln, rgamma

from . import DefaultConfig
from .errors import DomainError, NonConvergence
from .rational import format_fraction, to_fraction


log = structlog.get_logger(__name__)

Z_LIMIT = 50.0
""" Largest accepted argument magnitude. """

TRUNCATION_RUN = 3
""" Number of consecutive negligible terms that ends a summation. """


class EvalControl(namedtuple('EvalControl', ('rtol', 'k_max'))):
    """ Series truncation control.

    ``rtol``
        relative truncation tolerance
    ``k_max``
        hard cap on the outer summation index
    """

    __slots__ = ()

    def __new__(cls, rtol=DefaultConfig.RTOL, k_max=DefaultConfig.K_MAX):
        rtol = float(rtol)
        if not rtol > 0:
            raise DomainError("rtol must be positive", {'rtol': rtol})
        if int(k_max) != k_max or int(k_max) < 1:
            raise DomainError("k_max must be a positive integer",
                              {'k_max': k_max})
        return super(EvalControl, cls).__new__(cls, rtol, int(k_max))

    @classmethod
    def from_config(cls, config):
        """ Build a control from the ``RTOL`` and ``K_MAX`` settings. """
        return cls(config.get('RTOL', DefaultConfig.RTOL),
                   config.get('K_MAX', DefaultConfig.K_MAX))


DEFAULT_CONTROL = EvalControl()


class MLSpec(object):
    """ Parameters of a multinomial Mittag-Leffler function.

    Describes ``E_{(a_1..a_n),b}(z_1, .., z_n)`` evaluated at
    ``z_i = scales[i] * t**power_exponents[i]``.

    With one argument and ``gamma != 1`` the spec describes the Prabhakar
    function ``E^gamma_{a_1,b}(scales[0] * t**power_exponents[0])``.

    :param list a: positive inner orders
    :param b: outer parameter, ``b >= 0``
    :param list scales: the constants multiplying powers of t
    :param list power_exponents:
        the exponents of t in each argument (defaults to ``a``, the shape of
        the Laplace pairs in :py:mod:`fracsplit.sdomain`)
    :param gamma: the Prabhakar parameter
    """

    def __init__(self, a, b, scales, power_exponents=None, gamma=1):
        self.a = tuple(to_fraction(v) for v in a)
        self.b = to_fraction(b)
        self.gamma = to_fraction(gamma)
        self.scales = tuple(
            v if isinstance(v, numbers.Real) else to_fraction(v)
            for v in scales)
        if power_exponents is None:
            power_exponents = self.a
        self.power_exponents = tuple(to_fraction(v) for v in power_exponents)

        if not self.a or not (
                len(self.a) == len(self.scales) == len(self.power_exponents)):
            raise DomainError("a, scales and power_exponents must have the "
                              "same, non-zero length", {'spec': repr(self)})
        if any(v <= 0 for v in self.a):
            raise DomainError("all a must be positive", {'spec': repr(self)})
        if any(v < 0 for v in self.power_exponents):
            raise DomainError("power exponents must be non-negative",
                              {'spec': repr(self)})
        if self.b < 0:
            raise DomainError("b must be non-negative", {'spec': repr(self)})
        if self.gamma <= 0:
            raise DomainError("gamma must be positive", {'spec': repr(self)})
        if self.gamma != 1 and len(self.a) != 1:
            raise DomainError("gamma != 1 needs exactly one argument",
                              {'spec': repr(self)})

    @property
    def n(self):
        """ Number of arguments. """
        return len(self.a)

    def arguments(self, t):
        """ The arguments ``z_i`` at time ``t``. """
        return [float(c) * float(t) ** float(p)
                for c, p in zip(self.scales, self.power_exponents)]

    def _key(self):
        return (self.a, self.b, self.gamma, self.scales, self.power_exponents)

    def __eq__(self, other):
        if not isinstance(other, MLSpec):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return ('MLSpec(a=[{a!s}], b={b!s}, scales={s!r}, '
                'power_exponents=[{p!s}], gamma={g!s})').format(
                    a=', '.join(format_fraction(v) for v in self.a),
                    b=format_fraction(self.b),
                    s=[float(v) for v in self.scales],
                    p=', '.join(format_fraction(v)
                                for v in self.power_exponents),
                    g=format_fraction(self.gamma))


def _positive(name, value):
    try:
        value = float(to_fraction(value))
    except ValueError:
        raise DomainError("{!s} must be a number".format(name),
                          {name: repr(value)})
    if not value > 0:
        raise DomainError("{!s} must be positive".format(name), {name: value})
    return value


def _argument(z):
    z = float(z)
    if not math.isfinite(z) or abs(z) > Z_LIMIT:
        raise DomainError(
            "argument outside the convergence guard |z| <= {:g}".format(
                Z_LIMIT),
            {'z': z})
    return z


def _power_over_gamma(z, k, x):
    """ ``z**k / Gamma(x)`` for positive ``x``. """
    if k == 0:
        return float(rgamma(x))
    if z == 0:
        return 0.0
    sign = -1.0 if (z < 0 and k % 2) else 1.0
    return sign * math.exp(k * math.log(abs(z)) - gammaln(x))


def _sum_series(terms, ctrl, family):
    """ Sum a series under the truncation rule.

    :param terms: An iterable that yields the terms for k = 0, 1, ...
    :param EvalControl ctrl: Truncation control.
    :param str family: Function family name, for errors and logging.

    :raise NonConvergence: If k_max is reached or the partial sum overflows.
    """
    total = 0.0
    run = 0
    terms = iter(terms)
    for k in range(ctrl.k_max + 1):
        try:
            term = float(next(terms))
        except OverflowError:
            term = math.inf
        total += term
        if not math.isfinite(total):
            log.info('series-overflow', family=family, k=k)
            raise NonConvergence("partial sum overflowed",
                                 {'family': family, 'k': k})
        if total:
            small = abs(term) < ctrl.rtol * abs(total)
        else:
            small = term == 0
        run = run + 1 if small else 0
        if run >= TRUNCATION_RUN:
            log.debug('series-truncated', family=family, k=k)
            return total
    log.info('series-not-converged', family=family, k_max=ctrl.k_max)
    raise NonConvergence(
        "no convergence within k_max={:d} terms".format(ctrl.k_max),
        {'family': family, 'k_max': ctrl.k_max})


def ml1(alpha, z, ctrl=None):
    """ The one-parameter Mittag-Leffler function ``E_alpha(z)``.

    >>> round(ml1(1, 1), 12)
    2.718281828459

    :raise DomainError: If alpha <= 0 or z is outside the convergence guard.
    :raise NonConvergence: If the truncation rule does not fire.
    """
    ctrl = ctrl or DEFAULT_CONTROL
    alpha = _positive('alpha', alpha)
    z = _argument(z)
    terms = (_power_over_gamma(z, k, alpha * k + 1.0)
             for k in itertools.count())
    return _sum_series(terms, ctrl, 'ml1')


def ml2(alpha, beta, z, ctrl=None):
    """ The two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)``. """
    ctrl = ctrl or DEFAULT_CONTROL
    alpha = _positive('alpha', alpha)
    beta = _positive('beta', beta)
    z = _argument(z)
    terms = (_power_over_gamma(z, k, alpha * k + beta)
             for k in itertools.count())
    return _sum_series(terms, ctrl, 'ml2')


def _prabhakar_terms(alpha, beta, gamma, z):
    # (gamma)_k / k!, updated in place
    ratio = 1.0
    for k in itertools.count():
        if k:
            ratio *= (gamma + k - 1) / k
        yield ratio * _power_over_gamma(z, k, alpha * k + beta)


def ml_prabhakar(alpha, beta, gamma, z, ctrl=None):
    """ The Prabhakar function ``E^gamma_{alpha,beta}(z)``.

    The Pochhammer symbol ``(gamma)_k`` is carried incrementally, together with
    the ``k!`` it is divided by.
    """
    ctrl = ctrl or DEFAULT_CONTROL
    alpha = _positive('alpha', alpha)
    beta = _positive('beta', beta)
    gamma = _positive('gamma', gamma)
    z = _argument(z)
    return _sum_series(_prabhakar_terms(alpha, beta, gamma, z),
                       ctrl, 'prabhakar')


@functools.lru_cache(maxsize=512)
def compositions(k, n):
    """ All ``(l_1, .., l_n)``, ``l_i >= 0``, with ``sum(l) == k``.

    The compositions are listed in lexicographic order, as rows of an integer
    array.

    >>> compositions(2, 2).tolist()
    [[0, 2], [1, 1], [2, 0]]
    """
    rows = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        edges = (-1,) + bars + (k + n - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(n)])
    result = np.array(rows, dtype=np.int64).reshape(-1, n)
    result.setflags(write=False)
    return result


def _multinomial_terms(a, b, z):
    a = np.asarray(a, dtype=float)
    log_abs_z = np.log(np.abs(z))
    negative = (np.asarray(z) < 0).astype(np.int64)
    for k in itertools.count():
        l = compositions(k, len(a))
        # log of k! / (l_1! .. l_n!) * prod |z_i|**l_i / Gamma(b + a.l)
        logs = (gammaln(k + 1) - gammaln(l + 1).sum(axis=1)
                + (l * log_abs_z).sum(axis=1)
                - gammaln(b + l.dot(a)))
        signs = 1 - 2 * (l.dot(negative) % 2)
        with np.errstate(over='ignore'):
            yield float((signs * np.exp(logs)).sum())


def ml_multi(spec, t, ctrl=None, warn_args=DefaultConfig.ML_MULTI_WARN_ARGS):
    """ The multinomial Mittag-Leffler function of an :py:class:`MLSpec`.

    Evaluates ``E_{(a_1..a_n),b}(z_1..z_n)`` at
    ``z_i = spec.scales[i] * t**spec.power_exponents[i]``, summing over
    the outer index k with a full enumeration of the multi-indices
    ``l_1 + .. + l_n = k``.

    Arguments that are exactly zero only contribute through ``l_i = 0``, so
    their slots are dropped before the enumeration.

    :param MLSpec spec: The function parameters.
    :param float t: A non-negative time.
    :param EvalControl ctrl: Truncation control.
    :param int warn_args: Warn about cost above this many arguments.
    """
    ctrl = ctrl or DEFAULT_CONTROL
    t = float(t)
    if not t >= 0:
        raise DomainError("t must be non-negative", {'t': t})
    if not spec.b > 0:
        raise DomainError("evaluation needs b > 0", {'b': float(spec.b)})
    if spec.n > warn_args:
        warn(RuntimeWarning(
            "multinomial Mittag-Leffler function with {:d} arguments "
            "is expensive".format(spec.n)))

    z = [_argument(v) for v in spec.arguments(t)]
    if spec.gamma != 1:
        return ml_prabhakar(spec.a[0], spec.b, spec.gamma, z[0], ctrl)

    live = [(float(a), v) for a, v in zip(spec.a, z) if v != 0]
    if not live:
        return float(rgamma(float(spec.b)))
    a, z = zip(*live)
    return _sum_series(_multinomial_terms(a, float(spec.b), z),
                       ctrl, 'multi')
