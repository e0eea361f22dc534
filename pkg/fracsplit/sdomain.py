# encoding: utf-8
""" Exact Laplace-domain algebra.

Laplace transforms of linear Caputo equations with constant coefficients are
quotients of *fractional polynomials* in s, ``sum(c_i * s**mu_i)`` with
rational exponents. This module keeps both coefficients and exponents as
:py:class:`fractions.Fraction`, so equivalence of an equation and a split
system is decided exactly.

The Laplace transform of a Caputo derivative of order ``n-1 < alpha <= n`` is

    ``L{D^alpha f}(s) = s**alpha F(s) - sum(s**(alpha-k-1) f^(k)(0), k < n)``

and the inverse transforms used here are the multinomial Mittag-Leffler pairs

    ``t**(b-1) E_{(d-d_1, .., d-d_n), b}(-c_1 t**(d-d_1), ..)``
    ``<->  s**(d-b) / (s**d + c_1 s**d_1 + .. + c_n s**d_n)``

with ``d_n == 0`` and ``b >= 1``.

"""
import math
import numbers
from collections import namedtuple
from fractions import Fraction

import structlog

from .errors import NotAChain, ShapeError
from .mlf import MLSpec, ml_multi
from .rational import ceil_int, format_fraction, to_fraction


log = structlog.get_logger(__name__)


def _exact(value):
    if isinstance(value, Fraction):
        return value
    return to_fraction(value)


class SPoly(object):
    """ A fractional polynomial ``sum(c_i * s**mu_i)``.

    Terms are stored canonically: sorted by descending exponent, equal
    exponents merged, zero coefficients removed.
    """

    def __init__(self, terms=()):
        merged = {}
        for coeff, exponent in terms:
            exponent = _exact(exponent)
            merged[exponent] = merged.get(exponent, 0) + _exact(coeff)
        self._terms = tuple(
            (merged[e], e) for e in sorted(merged, reverse=True) if merged[e])

    @classmethod
    def monomial(cls, coeff, exponent):
        """ ``coeff * s**exponent``. """
        return cls([(coeff, exponent)])

    @classmethod
    def constant(cls, value):
        return cls.monomial(value, 0)

    @property
    def terms(self):
        """ ``(coeff, exponent)`` pairs, by descending exponent. """
        return self._terms

    def is_zero(self):
        return not self._terms

    def degree(self):
        """ The largest exponent (``None`` for the zero polynomial). """
        return self._terms[0][1] if self._terms else None

    def lowest(self):
        """ The smallest exponent (``None`` for the zero polynomial). """
        return self._terms[-1][1] if self._terms else None

    def coefficient(self, exponent):
        exponent = _exact(exponent)
        for c, e in self._terms:
            if e == exponent:
                return c
        return Fraction(0)

    def leading_coefficient(self):
        return self._terms[0][0] if self._terms else Fraction(0)

    def shift(self, gamma):
        """ Multiply by ``s**gamma``. """
        gamma = _exact(gamma)
        return SPoly((c, e + gamma) for c, e in self._terms)

    def evaluate(self, s):
        """ Evaluate at a positive real ``s``. """
        s = float(s)
        if not s > 0:
            raise ValueError("s must be positive")
        return math.fsum(float(c) * s ** float(e) for c, e in self._terms)

    def __add__(self, other):
        if not isinstance(other, SPoly):
            return NotImplemented
        return SPoly(self._terms + other._terms)

    def __neg__(self):
        return SPoly((-c, e) for c, e in self._terms)

    def __sub__(self, other):
        if not isinstance(other, SPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SPoly):
            return SPoly((c1 * c2, e1 + e2)
                         for c1, e1 in self._terms
                         for c2, e2 in other._terms)
        if isinstance(other, numbers.Rational):
            return SPoly((c * other, e) for c, e in self._terms)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SPoly):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for c, e in self._terms:
            if e == 0:
                parts.append(format_fraction(c))
            elif c == 1:
                parts.append('s^{!s}'.format(format_fraction(e)))
            else:
                parts.append('{!s}*s^{!s}'.format(format_fraction(c),
                                                  format_fraction(e)))
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self):
        return 'SPoly({!s})'.format(self)


class SRational(object):
    """ A quotient ``num / den`` of fractional polynomials.

    Instances are canonical: the leading coefficient of ``den`` is 1, and
    both parts are shifted so that the smallest exponent of ``den`` is 0.
    """

    def __init__(self, num, den):
        if den.is_zero():
            raise ShapeError("zero denominator", {'num': str(num)})
        lead = den.leading_coefficient()
        gamma = -den.lowest()
        self.num = (num * (1 / lead)).shift(gamma)
        self.den = (den * (1 / lead)).shift(gamma)

    def evaluate(self, s):
        """ Evaluate at a positive real ``s``. """
        return self.num.evaluate(s) / self.den.evaluate(s)

    def __add__(self, other):
        if not isinstance(other, SRational):
            return NotImplemented
        if self.den == other.den:
            return SRational(self.num + other.num, self.den)
        return SRational(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            return SRational(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return '({!s}) / ({!s})'.format(self.num, self.den)

    def __repr__(self):
        return 'SRational({!s})'.format(self)


def residual(A, B):
    """ The cross-multiplied difference ``A.num * B.den - B.num * A.den``.

    :rtype: SPoly
    """
    return A.num * B.den - B.num * A.den


def srational_equal(A, B):
    """ Exact equality of two s-domain quotients. """
    return residual(A, B).is_zero()


def initial_value_terms(order, init):
    """ ``sum(s**(order-k-1) * init[k])``, the initial value part of
    ``L{D^order y}``. """
    order = _exact(order)
    return SPoly((init[k], order - k - 1)
                 for k in range(min(ceil_int(order), len(init))))


def fde_laplace(fde):
    """ The Laplace transform ``X(s)`` of a multi-term equation.

    ``a_0 x + sum(a_j D^alpha_j x) = 0`` with ``x^(k)(0) = C_k`` gives

        ``X(s) = sum(a_j sum(C_k s**(alpha_j-k-1), k < ceil(alpha_j)))
        / (a_0 + sum(a_j s**alpha_j))``

    :param fracsplit.splitter.MultiTermFDE fde: A validated equation.
    :rtype: SRational
    """
    num = SPoly()
    den = SPoly.constant(fde.a[0])
    for a_j, alpha_j in zip(fde.a[1:], fde.alpha):
        num = num + a_j * initial_value_terms(alpha_j, fde.ics)
        den = den + SPoly.monomial(a_j, alpha_j)
    return SRational(num, den)


def _check_chain(system):
    links = system.equations
    if not links:
        raise NotAChain("empty system")
    last = len(links) - 1
    for j, link in enumerate(links):
        if link.unknown != j:
            raise NotAChain("equation {:d} does not define y{:d}".format(j, j),
                            {'equation': j})
        if j < last and dict(link.rhs) != {j + 1: 1}:
            raise NotAChain(
                "equation {:d} is not a chain link".format(j),
                {'equation': j,
                 'rhs': {str(k): format_fraction(v)
                         for k, v in link.rhs.items()}})
    if any(k > last or k < 0 for k in links[last].rhs):
        raise NotAChain("last equation refers to unknown unknowns",
                        {'equation': last})


def split_laplace(system):
    """ The Laplace transform ``Y_0(s)`` of the first unknown of a chain.

    Every unknown is written as ``Y_j = P_j Y_0 + Q_j``, forward through
    the chain links ``Y_{j+1} = s**b_j Y_j - IC_j(s)``. The last equation
    ``s**b_r Y_r - IC_r(s) = sum(c_k Y_k)`` is then a single linear relation
    for ``Y_0``.

    :param fracsplit.splitter.SplitSystem system: A chain system.
    :raise NotAChain: If the system is not a chain.
    :rtype: SRational
    """
    _check_chain(system)
    links = system.equations
    P = [SPoly.constant(1)]
    Q = [SPoly()]
    for link in links[:-1]:
        s_beta = SPoly.monomial(1, link.order)
        P.append(s_beta * P[-1])
        Q.append(s_beta * Q[-1] - initial_value_terms(link.order, link.init))

    last = links[-1]
    s_beta = SPoly.monomial(1, last.order)
    lhs = s_beta * P[-1]
    rhs = initial_value_terms(last.order, last.init) - s_beta * Q[-1]
    for k, c in last.rhs.items():
        lhs = lhs - c * P[k]
        rhs = rhs + c * Q[k]
    result = SRational(rhs, lhs)
    log.debug('split-laplace', links=len(links), den=str(result.den))
    return result


MLTerm = namedtuple('MLTerm', ('scale', 'power', 'spec'))
""" One term ``scale * t**power * E_spec(t)``. """


class MLTermSum(object):
    """ A sum of scaled multinomial Mittag-Leffler terms. """

    def __init__(self, terms):
        self.terms = tuple(MLTerm(_exact(s), _exact(p), spec)
                           for s, p, spec in terms)

    def evaluate(self, t, ctrl=None):
        """ The value at ``t >= 0``. """
        t = float(t)
        total = 0.0
        for scale, power, spec in self.terms:
            total += (float(scale) * t ** float(power) *
                      ml_multi(spec, t, ctrl))
        return total

    def laplace(self):
        """ The s-domain image of the sum. """
        result = None
        for scale, power, spec in self.terms:
            image = scale * ml_laplace(spec, power)
            result = image if result is None else result + image
        if result is None:
            return SRational(SPoly(), SPoly.constant(1))
        return result

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return 'MLTermSum({!r})'.format(list(self.terms))


def ml_laplace(spec, power=None):
    """ The Laplace image of ``t**(b-1) E_{(a_1..a_n),b}(..)``.

    The spec must have the shape of a Laplace pair: increasing orders ``a``,
    ``power_exponents == a``, ``gamma == 1`` and ``b >= 1``. With
    ``d = a_n`` the image is

        ``s**(d-b) / (s**d - scale_1 s**(d-a_1) - .. - scale_n)``

    :param MLSpec spec: The function parameters.
    :param power: The power of t in front; must be ``b - 1`` if given.
    :raise ShapeError: If the term is outside this family.
    :rtype: SRational
    """
    details = {'spec': repr(spec)}
    if power is not None and _exact(power) != spec.b - 1:
        raise ShapeError("power of t must be b - 1", details)
    if spec.gamma != 1:
        raise ShapeError("no Laplace pair for gamma != 1", details)
    if spec.b < 1:
        raise ShapeError("Laplace pairs need b >= 1", details)
    if spec.power_exponents != spec.a:
        raise ShapeError("power exponents must equal the orders", details)
    if any(x >= y for x, y in zip(spec.a, spec.a[1:])):
        raise ShapeError("orders must be strictly increasing", details)

    top = spec.a[-1]
    den = SPoly.monomial(1, top)
    for a_i, scale in zip(spec.a, spec.scales):
        den = den + SPoly.monomial(-_exact(scale), top - a_i)
    return SRational(SPoly.monomial(1, top - spec.b), den)


def inverse_laplace_to_ml(X):
    """ Decompose an s-domain quotient into Mittag-Leffler terms.

    With the canonical denominator ``s**d + c_1 s**d_1 + .. + c_n`` each
    numerator term ``c * s**mu`` maps to

        ``c * t**(b-1) E_{(d-d_1, .., d), b}(-c_1 t**(d-d_1), .., -c_n t**d)``

    with ``b = d - mu``. A constant denominator gives pure powers
    ``c * t**(b-1) / Gamma(b)``.

    :param SRational X: The quotient to invert.
    :raise ShapeError: If a numerator term would need ``b < 1``.
    :rtype: MLTermSum
    """
    X = SRational(X.num, X.den)
    top = X.den.degree()
    lower = X.den.terms[1:]
    if lower:
        a = [top - e for _, e in lower]
        scales = [-c for c, _ in lower]
    else:
        # t**(b-1)/Gamma(b), as a spec with a vanishing argument
        a, scales = [Fraction(1)], [Fraction(0)]

    terms = []
    for c, mu in X.num.terms:
        b = top - mu
        if b < 1:
            raise ShapeError(
                "numerator term s^{!s} is outside the Mittag-Leffler "
                "pairs (b = {!s} < 1)".format(format_fraction(mu),
                                              format_fraction(b)),
                {'exponent': format_fraction(mu), 'b': format_fraction(b)})
        terms.append(MLTerm(c, b - 1, MLSpec(a, b, scales)))
    log.debug('inverse-laplace', terms=len(terms), args=len(a))
    return MLTermSum(terms)
