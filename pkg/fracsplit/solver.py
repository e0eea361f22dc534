# encoding: utf-8
""" Time-domain solutions.

:py:func:`abm_solve`
    Adams-Bashforth-Moulton predictor-corrector for linear systems of Caputo
    equations, one order per unknown, with full memory. The low order part of
    the solution is taken from its generalized power series, and only the
    remainder is stepped.

:py:func:`closed_form_solve`
    The solution of a multi-term equation as a sum of multinomial
    Mittag-Leffler terms, via :py:mod:`fracsplit.sdomain`.

:py:func:`verify_equivalence`
    Compares an equation with a split system, both in the s-domain (exactly)
    and numerically.

"""
import csv
from collections import namedtuple
from fractions import Fraction

import blinker
import numpy as np
import structlog
from scipy.special import gamma as gamma_fn

from . import DefaultConfig
from .errors import DomainError, StepTooCoarse, UnsupportedOrder
from .gpseries import GPSeries, rl_integral
from .rational import ceil_int, format_fraction
from .sdomain import (fde_laplace, inverse_laplace_to_ml, residual,
                      split_laplace, srational_equal)
from .splitter import unknown_name


log = structlog.get_logger(__name__)

MIN_STEPS = 8
""" Smallest accepted number of steps. """

MAX_LINK_ORDER = 8
""" Largest link order the stepper reduces to first order links. """

SERIES_START_ORDER = 3
""" Powers of t below this come from the series start, not the stepper. """

EQUIVALENT = 'equivalent'
NOT_EQUIVALENT = 'not_equivalent'
INCONCLUSIVE = 'inconclusive'

signal_trajectory = blinker.signal('fracsplit.solver.trajectory')
""" Sent with ``trajectory=`` when :py:func:`abm_solve` finishes. """

signal_verdict = blinker.signal('fracsplit.solver.verdict')
""" Sent with ``report=`` when :py:func:`verify_equivalence` finishes. """


class Trajectory(object):
    """ A solution on the uniform grid ``t_k = k * h``.

    ``values[k, j]`` is unknown j at ``t[k]``.
    """

    def __init__(self, t, values, orders, meta):
        self.t = np.asarray(t, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.orders = list(orders)
        self.meta = dict(meta)

    @property
    def names(self):
        return [unknown_name(j) for j in range(self.values.shape[1])]

    def column(self, name):
        """ The values of one unknown (``'x'``, ``'y1'``, ..). """
        try:
            return self.values[:, self.names.index(name)]
        except ValueError:
            raise KeyError(name)

    def to_rows(self):
        """ ``[t, x, y1, ..]`` per grid point. """
        for t, row in zip(self.t, self.values):
            yield [float(t)] + [float(v) for v in row]

    def __len__(self):
        return len(self.t)

    def __repr__(self):
        return 'Trajectory(N={!s}, h={!s}, unknowns={!r})'.format(
            self.meta.get('N'), self.meta.get('h'), self.names)


class EquivalenceReport(namedtuple('EquivalenceReport',
                                   ('symbolic_equal', 'numeric_max_rel_gap',
                                    'grid', 'verdict', 'tol', 'residual'))):
    """ Outcome of :py:func:`verify_equivalence`.

    ``grid`` is ``(t_end, N)``; ``residual`` the s-domain cross difference.
    """

    __slots__ = ()

    def to_dict(self):
        return {
            'symbolic_equal': self.symbolic_equal,
            'numeric_max_rel_gap': self.numeric_max_rel_gap,
            'grid': {'t_end': self.grid[0], 'steps': self.grid[1]},
            'tol': self.tol,
            'residual': str(self.residual),
            'verdict': self.verdict,
        }


def decide(symbolic_equal, gap, tol):
    """ Verdict from a symbolic and a numeric comparison. """
    if symbolic_equal and gap <= tol:
        return EQUIVALENT
    if not symbolic_equal and gap > tol:
        return NOT_EQUIVALENT
    return INCONCLUSIVE


def max_rel_gap(values, reference):
    """ ``max(|v - r| / (1 + |r|))``. """
    values = np.asarray(values, dtype=float)
    reference = np.asarray(reference, dtype=float)
    return float(np.max(np.abs(values - reference) / (1.0 + np.abs(reference))))


def _reduce(system):
    """ Rewrite every link as first order links plus one of order <= 1.

    ``D^b y = r`` with ``b = n + f``, ``0 < f <= 1`` becomes
    ``y' = z_1, .., z_{n-1}' = z_n, D^f z_n = r`` with
    ``z_k(0) = y^(k)(0)``.

    :return: exact orders, initial values, rhs matrix and the component of
        every original unknown.
    """
    starts = []
    size = 0
    for link in system:
        starts.append(size)
        if ceil_int(link.order) > MAX_LINK_ORDER:
            raise UnsupportedOrder(
                "link order {!s} is above {:d}".format(
                    format_fraction(link.order), MAX_LINK_ORDER),
                {'unknown': link.unknown})
        size += ceil_int(link.order)

    orders = [Fraction(1)] * size
    y0 = np.empty(size)
    M = np.zeros((size, size))
    for link, start in zip(system, starts):
        n = ceil_int(link.order) - 1
        for k in range(n):
            y0[start + k] = float(link.init[k])
            M[start + k, start + k + 1] = 1.0
        orders[start + n] = Fraction(link.order) - n
        y0[start + n] = float(link.init[n])
        for index, coeff in link.rhs.items():
            M[start + n, starts[index]] += float(coeff)
    return orders, y0, M, starts


def _apply(M, series):
    """ ``(M P)_j`` for every row of M. """
    result = []
    for row in M:
        total = GPSeries()
        for k in np.flatnonzero(row):
            total = total + series[k].scale(row[k])
        result.append(total)
    return result


def _series_start(orders, y0, M):
    """ The solution below ``t**SERIES_START_ORDER`` as power series.

    Picard passes ``P_j = y0_j + I^(b_j) (M P)_j`` fix at least the smallest
    order's worth of exponents each. The forcing ``G_j`` is the part of
    ``(M P)_j`` that ``D^(b_j) P_j`` lacks, so the remainder ``R = y - P``
    solves ``D^(b_j) R_j = (M R)_j + G_j`` with ``R(0) = 0``.

    :return: the series P and the forcing G, one per component.
    """
    horizon = Fraction(SERIES_START_ORDER)
    constants = [GPSeries([(value, 0)]) for value in y0]
    series = constants
    for _ in range(ceil_int(horizon / min(orders)) + 1):
        rhs = _apply(M, series)
        series = [(c + rl_integral(r, b)).truncate(horizon)
                  for c, r, b in zip(constants, rhs, orders)]
    forcing = [GPSeries(term for term in r if term.exponent >= horizon - b)
               for r, b in zip(_apply(M, series), orders)]
    return series, forcing


def _on_grid(series, t):
    values = np.zeros_like(t)
    for coeff, exponent in series:
        values += coeff * t ** float(exponent)
    return values


def abm_solve(system, t_end, N):
    """ Solve a split system on ``[0, t_end]`` with N steps.

    Each step predicts with the fractional rectangle rule and corrects once
    with the fractional trapezoid rule, per component with its own order.

    Solutions of fractional equations carry powers like ``t**(1/4)`` that
    the product rules resolve badly near ``t = 0``. Every component is
    written as ``P + R``, where P is the exact generalized power series of
    the solution below ``t**SERIES_START_ORDER`` and R is stepped as above.

    :param fracsplit.splitter.SplitSystem system: The system.
    :param float t_end: End time.
    :param int N: Number of steps.

    :raise StepTooCoarse: If N < 8.
    :rtype: Trajectory
    """
    t_end = float(t_end)
    if not t_end > 0:
        raise DomainError("t_end must be positive", {'t_end': t_end})
    if int(N) < MIN_STEPS:
        raise StepTooCoarse(
            "need at least {:d} steps".format(MIN_STEPS), {'steps': N})
    N = int(N)
    h = t_end / N

    exact_orders, y0, M, starts = _reduce(system)
    orders = [float(b) for b in exact_orders]
    size = len(orders)
    series, forcing = _series_start(exact_orders, y0, M)
    t = np.linspace(0.0, t_end, N + 1)
    P = np.column_stack([_on_grid(s, t) for s in series])
    G = np.column_stack([_on_grid(g, t) for g in forcing])
    log.debug('abm-start', components=size, steps=N, h=h,
              series_terms=sum(len(s) for s in series))

    m = np.arange(N + 2, dtype=float)
    pred_w = []
    corr_w = []
    pred_scale = np.empty(size)
    corr_scale = np.empty(size)
    for j, beta in enumerate(orders):
        b = np.zeros(N + 2)
        b[1:] = m[1:] ** beta - m[:-1] ** beta
        p = m ** (beta + 1)
        c = np.zeros(N + 2)
        c[1:N + 1] = p[2:N + 2] + p[0:N] - 2.0 * p[1:N + 1]
        pred_w.append(b)
        corr_w.append(c)
        pred_scale[j] = h ** beta / gamma_fn(beta + 1)
        corr_scale[j] = h ** beta / gamma_fn(beta + 2)

    # R, the remainder below P
    R = np.zeros((N + 1, size))
    F = np.empty((N + 1, size))
    F[0] = G[0]
    predicted = np.empty(size)
    for n in range(N):
        for j in range(size):
            predicted[j] = pred_scale[j] * np.dot(
                pred_w[j][n + 1:0:-1], F[:n + 1, j])
        F_pred = M.dot(predicted) + G[n + 1]
        for j, beta in enumerate(orders):
            a0 = n ** (beta + 1) - (n - beta) * (n + 1) ** beta
            R[n + 1, j] = corr_scale[j] * (
                F_pred[j] + a0 * F[0, j] +
                np.dot(corr_w[j][n:0:-1], F[1:n + 1, j]))
        F[n + 1] = M.dot(R[n + 1]) + G[n + 1]

    Y = P + R
    trajectory = Trajectory(
        t,
        Y[:, starts],
        system.orders,
        {'h': h, 'N': N, 'method': 'abm-pece'})
    log.info('abm-finished', steps=N, t_end=t_end,
             x_end=float(trajectory.values[-1, 0]))
    signal_trajectory.send(abm_solve, trajectory=trajectory)
    return trajectory


def closed_form_solve(fde, t_points, ctrl=None):
    """ Evaluate the Mittag-Leffler closed form of an equation.

    :param fracsplit.splitter.MultiTermFDE fde: The equation.
    :param t_points: Non-negative times.
    :param fracsplit.mlf.EvalControl ctrl: Series truncation control.

    :raise fracsplit.errors.ShapeError: If X(s) has no Mittag-Leffler form.
    :rtype: list
    """
    points = [float(t) for t in t_points]
    if any(not t >= 0 for t in points):
        raise DomainError("times must be non-negative")
    terms = inverse_laplace_to_ml(fde_laplace(fde))
    return [terms.evaluate(t, ctrl) for t in points]


def verify_equivalence(fde, system, t_end=DefaultConfig.T_END,
                       N=DefaultConfig.STEPS, tol=DefaultConfig.VERIFY_TOL,
                       ctrl=None):
    """ Compare an equation with a split system.

    The symbolic half compares ``X(s)`` and ``Y_0(s)`` exactly. The numeric
    half compares ``x`` from :py:func:`abm_solve` with the closed form at
    every grid point, using the gap ``|x_abm - x_cf| / (1 + |x_cf|)``.

    :rtype: EquivalenceReport
    """
    X = fde_laplace(fde)
    Y = split_laplace(system)
    symbolic = srational_equal(X, Y)

    trajectory = abm_solve(system, t_end, N)
    reference = closed_form_solve(fde, trajectory.t, ctrl)
    gap = max_rel_gap(trajectory.column('x'), reference)

    report = EquivalenceReport(symbolic, gap, (float(t_end), int(N)),
                               decide(symbolic, gap, tol), tol,
                               residual(X, Y))
    log.info('verdict', verdict=report.verdict, symbolic_equal=symbolic,
             gap=gap, kind=system.kind)
    signal_verdict.send(verify_equivalence, report=report)
    return report


def write_csv(stream, trajectory, reference=None):
    """ Write a trajectory as CSV.

    Values use 17 significant digits. With a ``reference`` (closed form
    values of x on the same grid) an ``x_closed_form`` column and a
    ``# max_rel_gap=..`` footer are added.
    """
    writer = csv.writer(stream, lineterminator='\n')
    header = ['t'] + trajectory.names
    if reference is not None:
        header.append('x_closed_form')
    writer.writerow(header)
    for k, row in enumerate(trajectory.to_rows()):
        if reference is not None:
            row.append(reference[k])
        writer.writerow(['{:.17g}'.format(v) for v in row])
    if reference is not None:
        stream.write('# max_rel_gap={:.17g}\n'.format(
            max_rel_gap(trajectory.column('x'), reference)))
