# encoding: utf-8
""" Named counterexamples.

Each entry reproduces one known failure of a "textbook" identity and reports
whether the failure shows up:

``ex4.1``, ``ex4.2``, ``ex4.3``
    ``D^a D^a E_a(t^a) != D^(2a) E_a(t^a)`` for ``a`` in 1/4, 1/2, 3/10
``case-i``, ``case-ii``, ``case-iii``
    the naive two-link split of ``D^alpha x + D^beta x + x = 0`` for the
    three kinds of order gaps
``thm-2m2``
    the naive ``2m-2`` link split of a three-term equation, which misses the
    ``a_m C_{m-1} s^(alpha_m - m)`` term

"""
from collections import OrderedDict, namedtuple
from fractions import Fraction

import structlog

from . import DefaultConfig
from .errors import UsageError
from .gpseries import (compose_check, eval as eval_series,
                       ml_series_prediction, ml_to_series)
from .rational import format_fraction
from .sdomain import SPoly, fde_laplace, residual, split_laplace
from .splitter import MultiTermFDE, build_naive_split, classify_two_term
from .template import add_template, render


log = structlog.get_logger(__name__)

NOT_EQUAL = 'NOT EQUAL'
EQUAL = 'EQUAL'

SERIES_TERMS = 40
SAMPLE_POINTS = (0.25, 1.0)
HEAD = 4

# report line templates
add_template('compose-sample',
             't = {{ t|num }}: lhs = {{ lhs|num }}, rhs = {{ rhs|num }}, '
             'gap = {{ gap|num }}')

add_template('lowest-mismatch',
             'lowest mismatching exponent: {{ exponent|rational }}')


class CounterexampleReport(namedtuple('CounterexampleReport',
                                      ('name', 'title', 'claim', 'lines',
                                       'verdict'))):
    """ Outcome of a counterexample run. """

    __slots__ = ()

    def render(self):
        return render('counterexample.tpl', report=self)


Counterexample = namedtuple('Counterexample', ('title', 'claim', 'run'))

COUNTEREXAMPLES = OrderedDict()


def register(name, title, claim):
    """ Register a counterexample function under a name. """
    def wrapper(func):
        COUNTEREXAMPLES[name] = Counterexample(title, claim, func)
        return func
    return wrapper


def _head(series):
    terms = ['{:.10g}*t^{!s}'.format(c, format_fraction(e))
             for c, e in series.terms[:HEAD]]
    if len(series) > HEAD:
        terms.append('...')
    return ' + '.join(terms) or '0'


def _compose_example(alpha, lam=1, K=SERIES_TERMS,
                     tol=DefaultConfig.COMPOSE_TOL):
    alpha = Fraction(alpha)
    f = ml_to_series(alpha, lam, K)
    report = compose_check(f, alpha, alpha, SAMPLE_POINTS, tol)
    predicted = ml_series_prediction(alpha, lam, alpha, alpha, K - 1)
    a = format_fraction(alpha)
    lines = [
        'f = E_{0}(t^{0}), truncated after K = {1:d} terms'.format(a, K),
        'D^{0} D^{0} f = {1!s}'.format(a, _head(report.lhs_series)),
        'D^{0} f = {1!s}'.format(format_fraction(2 * alpha),
                                 _head(report.rhs_series)),
        'D^{0} f matches t^{1} E_({2},{3})(t^{2}): {4!s}'.format(
            format_fraction(2 * alpha), format_fraction(-alpha), a,
            format_fraction(1 - alpha),
            'yes' if report.rhs_series.close_to(predicted, tol) else 'no'),
    ]
    lhs = report.lhs_series.truncate(report.rhs_series.truncation_order)
    for t, gap in zip(report.sample_points, report.gaps):
        lines.append(render('compose-sample', t=t, lhs=eval_series(lhs, t),
                            rhs=eval_series(report.rhs_series, t), gap=gap))
    if report.lowest_mismatch is not None:
        lines.append(render('lowest-mismatch',
                            exponent=report.lowest_mismatch))
    return lines, (EQUAL if report.equal_termwise else NOT_EQUAL)


@register('ex4.1', 'D^1/4 D^1/4 E_1/4 vs D^1/2 E_1/4',
          'D^1/4 D^1/4 E_1/4(t^1/4) != D^1/2 E_1/4(t^1/4)')
def example_quarter():
    return _compose_example(Fraction(1, 4))


@register('ex4.2', 'D^1/2 D^1/2 E_1/2 vs D^1 E_1/2',
          'D^1/2 D^1/2 E_1/2(t^1/2) != D^1 E_1/2(t^1/2)')
def example_half():
    return _compose_example(Fraction(1, 2))


@register('ex4.3', 'D^3/10 D^3/10 E_3/10 vs D^3/5 E_3/10',
          'D^3/10 D^3/10 E_3/10(t^3/10) != D^3/5 E_3/10(t^3/10)')
def example_three_tenths():
    return _compose_example(Fraction(3, 10))


def _laplace_lines(X, Y):
    diff = residual(X, Y)
    return [
        'X(s) = {!s}'.format(X),
        'Y0(s) = {!s}'.format(Y),
        'residual = {!s}'.format(diff),
    ], (EQUAL if diff.is_zero() else NOT_EQUAL)


def _two_term_case(alpha, beta):
    fde = MultiTermFDE([1, 1, 1], [beta, alpha], [1, 1])
    system = build_naive_split(fde, 'two_term_pair')
    lines, verdict = _laplace_lines(fde_laplace(fde), split_laplace(system))
    lines.insert(0, 'D^{0} x + D^{1} x + x = 0, x(0) = 1, x\'(0) = 1; '
                    'case ({2!s})'.format(format_fraction(alpha),
                                          format_fraction(beta),
                                          classify_two_term(fde)))
    lines.insert(1, 'split: D^{0} x = y, D^{1} y = -x - y, y(0) = 0'.format(
        format_fraction(beta), format_fraction(alpha - beta)))
    return lines, verdict


@register('case-i', 'naive split, 1 < alpha - beta < 2',
          'D^9/5 x + D^3/10 x + x = 0 is not equivalent to its naive split')
def case_one():
    return _two_term_case(Fraction(9, 5), Fraction(3, 10))


@register('case-ii', 'naive split, 0 < alpha - beta < 1',
          'D^6/5 x + D^7/10 x + x = 0 is not equivalent to its naive split')
def case_two():
    return _two_term_case(Fraction(6, 5), Fraction(7, 10))


@register('case-iii', 'naive split, alpha - beta = 1',
          'D^3/2 x + D^1/2 x + x = 0 is not equivalent to its naive split')
def case_three():
    return _two_term_case(Fraction(3, 2), Fraction(1, 2))


THM_2M2_FDE = MultiTermFDE(a=[1, 1, 1, 2],
                           alpha=['1/2', '3/2', '5/2'],
                           ics=[1, 0, '3/2'])


def missing_term(fde):
    """ ``a_m C_{m-1} s^(alpha_m - m)``, the numerator term the naive
    ``2m-2`` split cannot produce. """
    return SPoly.monomial(fde.a[-1] * fde.ics[fde.m - 1], fde.order - fde.m)


@register('thm-2m2', 'naive 2m-2 split of a three-term equation',
          'the 2m-2 link split misses a_m C_(m-1) s^(alpha_m - m)')
def cut_2m2(fde=THM_2M2_FDE):
    system = build_naive_split(fde, 'cut_2m2')
    X = fde_laplace(fde)
    lines, verdict = _laplace_lines(X, split_laplace(system))
    term = missing_term(fde)
    # both sides share the canonical denominator, scaled by 1/a_m
    predicted = term * X.den * (1 / fde.a[-1])
    lines.insert(0, repr(fde))
    lines.append('a_{0:d} C_{1:d} s^{2!s} = {3!s}'.format(
        fde.m, fde.m - 1, format_fraction(fde.order - fde.m), term))
    lines.append('residual is that term times the denominator: {!s}'.format(
        'yes' if residual(X, split_laplace(system)) == predicted else 'no'))
    return lines, verdict


def run_counterexample(name):
    """ Run a named counterexample.

    :raise UsageError: For unknown names.
    :rtype: CounterexampleReport
    """
    try:
        entry = COUNTEREXAMPLES[name]
    except KeyError:
        raise UsageError("unknown counterexample {!r}".format(name),
                         {'known': list(COUNTEREXAMPLES)})
    lines, verdict = entry.run()
    log.info('counterexample', name=name, verdict=verdict)
    return CounterexampleReport(name, entry.title, entry.claim, lines,
                                verdict)
