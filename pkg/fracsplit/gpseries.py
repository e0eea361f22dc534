# encoding: utf-8
""" Generalized power series and termwise fractional calculus.

A :py:class:`GPSeries` is a finite sum ``sum(c_k * t**g_k)`` with exact
rational exponents and float coefficients, together with a *truncation order*:
the exponent up to which the series is trusted. The Caputo derivative and the
Riemann-Liouville integral act on powers of t in closed form, so they act on
these series term by term:

- ``D^alpha t**b = Gamma(b+1)/Gamma(b-alpha+1) t**(b-alpha)`` when
  ``b > n-1`` (``n-1 < alpha <= n``), and ``0`` when ``b`` is one of
  ``0, 1, .., n-1``
- ``I^alpha t**b = Gamma(b+1)/Gamma(b+alpha+1) t**(b+alpha)``

The Gamma ratios are computed with :py:func:`scipy.special.poch`.

"""
import math
from collections import namedtuple
from fractions import Fraction

import structlog
from scipy.special import gamma as gamma_fn, poch

from . import DefaultConfig
from .errors import DomainError, UnsupportedExponent
from .rational import ceil_int, format_fraction, is_integer, to_fraction


log = structlog.get_logger(__name__)

PRUNE_BELOW = 1e-30
""" Coefficients smaller than this are dropped after arithmetic. """

DUST = 1e-24
""" Coefficients below this count as zero when two series are compared. """

HORIZON_TOL = 1e-6
""" Largest relative size of the last kept term at a compose sample point. """


GPTerm = namedtuple('GPTerm', ('coeff', 'exponent'))
""" One term ``coeff * t**exponent``. """


class _Divergent(object):
    """ Marker for a value that diverges at t = 0. """

    def __repr__(self):
        return 'Divergent'

    def __bool__(self):
        return False


DIVERGENT = _Divergent()
""" Returned by :py:func:`caputo_value_at_zero` for singular images. """


class GPSeries(object):
    """ A finite generalized power series.

    :param terms:
        An iterable of ``(coeff, exponent)`` pairs. Equal exponents are merged
        and negligible coefficients are dropped.
    :param truncation_order:
        The exponent bound up to which the series is trusted, or
        ``math.inf`` for an exact finite series.
    """

    def __init__(self, terms=(), truncation_order=math.inf):
        merged = {}
        for coeff, exponent in terms:
            exponent = to_fraction(exponent)
            merged[exponent] = merged.get(exponent, 0.0) + float(coeff)
        self._terms = tuple(
            GPTerm(merged[e], e) for e in sorted(merged)
            if abs(merged[e]) >= PRUNE_BELOW)
        if truncation_order != math.inf:
            truncation_order = to_fraction(truncation_order)
        self.truncation_order = truncation_order

    @classmethod
    def polynomial(cls, *coeffs):
        """ An exact series ``c_0 + c_1 t + c_2 t**2 + ..``. """
        return cls((c, k) for k, c in enumerate(coeffs))

    @property
    def terms(self):
        """ The terms, sorted by exponent. """
        return self._terms

    def exponents(self):
        """ The stored exponents, ascending. """
        return [term.exponent for term in self._terms]

    def coefficient(self, exponent):
        """ The coefficient of ``t**exponent`` (0 if absent). """
        exponent = to_fraction(exponent)
        for term in self._terms:
            if term.exponent == exponent:
                return term.coeff
        return 0.0

    def lowest_exponent(self):
        """ The smallest stored exponent, or ``None`` for the zero series. """
        return self._terms[0].exponent if self._terms else None

    def is_zero(self):
        return not self._terms

    def truncate(self, order):
        """ Drop all terms with exponent ``>= order``. """
        if order == math.inf:
            return self
        order = to_fraction(order)
        return GPSeries(
            (t for t in self._terms if t.exponent < order),
            min(self.truncation_order, order))

    def scale(self, factor):
        """ Multiply every coefficient by ``factor``. """
        return GPSeries(((c * float(factor), e) for c, e in self._terms),
                        self.truncation_order)

    def __add__(self, other):
        if not isinstance(other, GPSeries):
            return NotImplemented
        return GPSeries(self._terms + other._terms,
                        min(self.truncation_order, other.truncation_order))

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        if not isinstance(other, GPSeries):
            return NotImplemented
        return self + (-other)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def close_to(self, other, tol=DefaultConfig.COMPOSE_TOL):
        """ Exponent-by-exponent comparison under a relative tolerance.

        Only exponents below both truncation orders are compared.
        """
        return mismatches(self, other, tol) == []

    def __eq__(self, other):
        if not isinstance(other, GPSeries):
            return NotImplemented
        return (self._terms == other._terms and
                self.truncation_order == other.truncation_order)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self._terms, self.truncation_order))

    def __repr__(self):
        body = ' + '.join(
            '{:.12g}*t^{!s}'.format(c, format_fraction(e))
            for c, e in self._terms) or '0'
        if self.truncation_order == math.inf:
            return 'GPSeries({!s})'.format(body)
        return 'GPSeries({!s} + O(t^{!s}))'.format(
            body, format_fraction(self.truncation_order))


def eval(f, t):
    """ Evaluate a series at ``t >= 0``.

    A negative exponent at ``t = 0`` gives ``inf`` (with the sign of its
    coefficient).
    """
    t = float(t)
    if not t >= 0:
        raise DomainError("t must be non-negative", {'t': t})
    total = 0.0
    for coeff, exponent in f.terms:
        if t == 0 and exponent < 0:
            return math.copysign(math.inf, coeff)
        total += coeff * t ** float(exponent)
    return total


def ml_to_series(alpha, lam, K):
    """ The truncated series of ``E_alpha(lam * t**alpha)``.

    ``sum(lam**k t**(alpha k) / Gamma(alpha k + 1), k = 0..K)``, trusted up to
    the exponent ``alpha (K + 1)``.
    """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive",
                          {'alpha': format_fraction(alpha)})
    if int(K) < 1:
        raise DomainError("K must be at least 1", {'K': K})
    lam = float(lam)
    terms = [(lam ** k / gamma_fn(float(alpha * k) + 1.0), alpha * k)
             for k in range(int(K) + 1)]
    return GPSeries(terms, alpha * (int(K) + 1))


def ml_series_prediction(alpha, lam, a1, a2, K):
    """ The closed form of ``D^(a1+a2) E_alpha(lam t**alpha)``.

    ``lam t**(alpha-a1-a2) E_{alpha, alpha-a1-a2+1}(lam t**alpha)``, as a
    series with K + 1 terms, matching the truncation of
    ``ml_to_series(alpha, lam, K + 1)`` after both derivatives.
    """
    alpha, a1, a2 = (to_fraction(v) for v in (alpha, a1, a2))
    shift = alpha - a1 - a2
    lam = float(lam)
    terms = [(lam ** (k + 1) / gamma_fn(float(alpha * k + shift) + 1.0),
              alpha * k + shift)
             for k in range(int(K) + 1)]
    return GPSeries(terms, alpha * (int(K) + 2) - a1 - a2)


def _order_cell(alpha):
    """ The integer n with ``n - 1 < alpha <= n``. """
    return ceil_int(alpha)


def caputo_deriv(f, alpha):
    """ Termwise Caputo derivative of order ``alpha``.

    :raise UnsupportedExponent:
        If some exponent is a non-integer ``<= n - 1`` (or a negative
        integer), where the power formula does not apply.
    """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive",
                          {'alpha': format_fraction(alpha)})
    n = _order_cell(alpha)
    terms = []
    for coeff, beta in f.terms:
        if is_integer(beta) and 0 <= beta <= n - 1:
            continue
        if beta <= n - 1:
            raise UnsupportedExponent(
                "t^{!s} is outside the termwise Caputo formula of "
                "order {!s}".format(format_fraction(beta),
                                    format_fraction(alpha)),
                {'exponent': format_fraction(beta),
                 'alpha': format_fraction(alpha)})
        terms.append((coeff * poch(float(beta - alpha) + 1.0, float(alpha)),
                      beta - alpha))
    return GPSeries(terms, f.truncation_order - alpha)


def rl_integral(f, alpha):
    """ Termwise Riemann-Liouville integral of order ``alpha``. """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive",
                          {'alpha': format_fraction(alpha)})
    terms = []
    for coeff, beta in f.terms:
        if beta <= -1:
            raise UnsupportedExponent(
                "t^{!s} is not integrable at 0".format(format_fraction(beta)),
                {'exponent': format_fraction(beta)})
        terms.append((coeff / poch(float(beta) + 1.0, float(alpha)),
                      beta + alpha))
    return GPSeries(terms, f.truncation_order + alpha)


def caputo_of_integral(f, alpha, beta):
    """ ``D^alpha I^beta f`` in its reduced form.

    - ``I^(beta-alpha) f`` if beta > alpha
    - ``f`` if beta == alpha
    - ``D^(alpha-beta) f`` if alpha > beta
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    if beta > alpha:
        return rl_integral(f, beta - alpha)
    if beta == alpha:
        return f
    return caputo_deriv(f, alpha - beta)


def mismatches(f, g, tol):
    """ Exponents (below both trust horizons) where two series disagree.

    Coefficients agree when ``|c_f - c_g| <= tol * max(|c_f|, |c_g|)``; a term
    present in only one series disagrees unless its coefficient is below
    :py:data:`DUST`.
    """
    horizon = min(f.truncation_order, g.truncation_order)
    exponents = sorted(
        set(e for e in f.exponents() + g.exponents() if e < horizon))
    result = []
    for exponent in exponents:
        cf, cg = f.coefficient(exponent), g.coefficient(exponent)
        scale = max(abs(cf), abs(cg))
        if scale >= DUST and abs(cf - cg) > tol * scale:
            result.append(exponent)
    return result


class ComposeReport(object):
    """ Outcome of :py:func:`compose_check`.

    ``lhs_series``
        ``D^a1 D^a2 f``
    ``swapped_series``
        ``D^a2 D^a1 f``
    ``rhs_series``
        ``D^(a1+a2) f``
    ``equal_termwise``
        whether the three series agree exponent by exponent
    ``lowest_mismatch``
        the smallest exponent where they disagree, or ``None``
    ``gaps``
        per sample point, the larger relative gap of the two compositions
        against ``D^(a1+a2) f``
    ``max_numeric_gap``
        the largest of the gaps
    """

    def __init__(self, lhs_series, swapped_series, rhs_series,
                 equal_termwise, lowest_mismatch, gaps, sample_points):
        self.lhs_series = lhs_series
        self.swapped_series = swapped_series
        self.rhs_series = rhs_series
        self.equal_termwise = equal_termwise
        self.lowest_mismatch = lowest_mismatch
        self.gaps = list(gaps)
        self.sample_points = list(sample_points)

    @property
    def max_numeric_gap(self):
        return max(self.gaps) if self.gaps else 0.0

    def __repr__(self):
        return ('ComposeReport(equal_termwise={!r}, lowest_mismatch={!s}, '
                'max_numeric_gap={:.3g})').format(
                    self.equal_termwise,
                    (format_fraction(self.lowest_mismatch)
                     if self.lowest_mismatch is not None else None),
                    self.max_numeric_gap)


def _relative_gap(x, y):
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale else 0.0


def compose_check(f, a1, a2, sample_points, tol=DefaultConfig.COMPOSE_TOL):
    """ Check ``D^a1 D^a2 f == D^a2 D^a1 f == D^(a1+a2) f`` termwise.

    The three series are compared below their common trust horizon, and
    evaluated (cut at that horizon) at the sample points.

    A truncated f is only trusted at points where its last kept term is
    below ``HORIZON_TOL`` relative to ``max(|f(t)|, 1)``.

    :raise DomainError: If a sample point is not positive, or lies beyond
        the reach of a truncated f.
    :raise UnsupportedExponent: From :py:func:`caputo_deriv`.
    """
    a1, a2 = to_fraction(a1), to_fraction(a2)
    points = [float(t) for t in sample_points]
    if not points or any(not t > 0 for t in points):
        raise DomainError("sample points must be positive",
                          {'sample_points': points})
    if f.truncation_order != math.inf and f.terms:
        tail = f.terms[-1]
        for t in points:
            if abs(tail.coeff) * t ** float(tail.exponent) > (
                    HORIZON_TOL * max(abs(eval(f, t)), 1.0)):
                raise DomainError(
                    "sample point {:g} is beyond the reach of a series "
                    "trusted up to t^{!s}".format(
                        t, format_fraction(f.truncation_order)),
                    {'t': t,
                     'truncation_order': format_fraction(
                         f.truncation_order)})

    lhs = caputo_deriv(caputo_deriv(f, a2), a1)
    swapped = caputo_deriv(caputo_deriv(f, a1), a2)
    rhs = caputo_deriv(f, a1 + a2)

    bad = sorted(set(mismatches(lhs, rhs, tol)) |
                 set(mismatches(swapped, rhs, tol)) |
                 set(mismatches(lhs, swapped, tol)))

    horizon = min(lhs.truncation_order, swapped.truncation_order,
                  rhs.truncation_order)
    cut = [s.truncate(horizon) for s in (lhs, swapped, rhs)]
    gaps = []
    for t in points:
        values = [eval(s, t) for s in cut]
        gaps.append(max(_relative_gap(values[0], values[2]),
                        _relative_gap(values[1], values[2])))

    report = ComposeReport(lhs, swapped, rhs, not bad,
                           bad[0] if bad else None, gaps, points)
    log.debug('compose-check', a1=format_fraction(a1),
              a2=format_fraction(a2), equal=report.equal_termwise)
    return report


def regularity_class(f):
    """ Largest k such that the series is k times continuously
    differentiable at t = 0.

    Every exponent must be a non-negative integer or exceed k. Returns
    ``math.inf`` for polynomials and ``-1`` when some exponent is negative.
    """
    k = math.inf
    for exponent in f.exponents():
        if is_integer(exponent) and exponent >= 0:
            continue
        if exponent < 0:
            return -1
        # largest integer strictly below the exponent
        k = min(k, ceil_int(exponent) - 1)
    return k


def caputo_value_at_zero(f, alpha):
    """ ``D^alpha f`` at t = 0.

    Returns 0 when all image exponents are positive, the constant term when
    there is one, and :py:data:`DIVERGENT` when an image exponent is negative.
    """
    image = caputo_deriv(f, alpha)
    if any(e < 0 for e in image.exponents()):
        return DIVERGENT
    return image.coefficient(Fraction(0))
