# encoding: utf-8
""" Multi-term equations and their split systems.

A linear multi-term equation

    ``a_0 x + a_1 D^alpha_1 x + .. + a_m D^alpha_m x = 0``

is *split* into a chain of equations ``D^b_j y_j = y_{j+1}`` that ends in one
equation whose right hand side is a linear combination of the unknowns. Only
some choices of orders and intermediate initial values give a system with the
same solution ``x = y_0``:

:py:func:`build_split_2m1`
    ``2m-1`` links of order at most 1, for ``k-1 < alpha_k <= k``.

:py:func:`build_split_chain`
    ``m`` links, for orders inside one unit cell ``p < alpha_1 < .. <=
    p+1``.

:py:func:`build_naive_split`
    two constructions that look reasonable but are not equivalent in general.

Every constructor sends :py:data:`signal_split`.

"""
from collections import namedtuple
from fractions import Fraction

import blinker
import structlog

from .errors import (CellViolation, DegenerateOrder, InvalidRefinement,
                     MalformedFDE, NotAChain, OrderCellViolation)
from .rational import ceil_int, format_fraction, to_fraction


log = structlog.get_logger(__name__)

signal_split = blinker.signal('fracsplit.splitter.split')
""" Sent with ``system=`` after a split system is built.

The sender is the constructor function.
"""

KIND_2M1 = '2m1'
KIND_CHAIN = 'chain'
KIND_NAIVE_PAIR = 'naive_pair'
KIND_NAIVE_CUT = 'naive_cut'

KINDS = (KIND_2M1, KIND_CHAIN, KIND_NAIVE_PAIR, KIND_NAIVE_CUT)

NAIVE_VARIANTS = {
    'two_term_pair': KIND_NAIVE_PAIR,
    'cut_2m2': KIND_NAIVE_CUT,
}


def _fractions(values):
    return tuple(to_fraction(v) for v in values)


class MultiTermFDE(object):
    """ ``a_0 x + sum(a_j D^alpha_j x) = 0`` with initial values.

    :param list a: coefficients ``a_0 .. a_m``, ``a_m != 0``
    :param list alpha: strictly increasing positive orders ``alpha_1 ..
        alpha_m``
    :param list ics: ``x(0), x'(0), ..``, exactly ``ceil(alpha_m)`` values

    :raise MalformedFDE: If the equation violates these rules.
    """

    def __init__(self, a, alpha, ics):
        try:
            self.a = _fractions(a)
            self.alpha = _fractions(alpha)
            self.ics = _fractions(ics)
        except ValueError as e:
            raise MalformedFDE(str(e))

        details = {'a': [format_fraction(v) for v in self.a],
                   'alpha': [format_fraction(v) for v in self.alpha]}
        if len(self.a) < 2 or len(self.a) != len(self.alpha) + 1:
            raise MalformedFDE("need m orders and m + 1 coefficients", details)
        if self.a[-1] == 0:
            raise MalformedFDE("leading coefficient a_m must be non-zero",
                               details)
        if self.alpha[0] <= 0:
            raise MalformedFDE("orders must be positive", details)
        if any(x >= y for x, y in zip(self.alpha, self.alpha[1:])):
            raise MalformedFDE("orders must be strictly increasing", details)
        if len(self.ics) != ceil_int(self.order):
            raise MalformedFDE(
                "need {:d} initial values, got {:d}".format(
                    ceil_int(self.order), len(self.ics)),
                details)

    @property
    def m(self):
        """ Number of derivative terms. """
        return len(self.alpha)

    @property
    def order(self):
        """ The highest order ``alpha_m``. """
        return self.alpha[-1]

    def check_order_cells(self):
        """ Require ``k-1 < alpha_k <= k`` for every k.

        :raise OrderCellViolation: otherwise.
        """
        for k, alpha_k in enumerate(self.alpha, 1):
            if not k - 1 < alpha_k <= k:
                raise OrderCellViolation(
                    "alpha_{:d} = {!s} is outside ({:d}, {:d}]".format(
                        k, format_fraction(alpha_k), k - 1, k),
                    {'k': k, 'alpha': format_fraction(alpha_k)})

    def unit_cell(self):
        """ The integer p with ``p < alpha_1 < .. < alpha_m <= p+1``.

        :raise CellViolation: If the orders span more than one cell.
        """
        p = ceil_int(self.order) - 1
        if not self.alpha[0] > p:
            raise CellViolation(
                "orders {!s} do not share one unit cell".format(
                    ', '.join(format_fraction(v) for v in self.alpha)),
                {'alpha': [format_fraction(v) for v in self.alpha]})
        return p

    def _key(self):
        return (self.a, self.alpha, self.ics)

    def __eq__(self, other):
        if not isinstance(other, MultiTermFDE):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return 'MultiTermFDE(a=[{!s}], alpha=[{!s}], ics=[{!s}])'.format(
            ', '.join(format_fraction(v) for v in self.a),
            ', '.join(format_fraction(v) for v in self.alpha),
            ', '.join(format_fraction(v) for v in self.ics))


class Link(namedtuple('Link', ('order', 'unknown', 'rhs', 'init'))):
    """ One equation ``D^order y_unknown = sum(rhs[k] * y_k)``.

    ``init`` lists ``y(0), y'(0), ..`` (``ceil(order)`` values).
    """

    __slots__ = ()

    def __new__(cls, order, unknown, rhs, init):
        order = to_fraction(order)
        rhs = dict((int(k), to_fraction(v)) for k, v in dict(rhs).items()
                   if v != 0)
        init = _fractions(init)
        if order <= 0:
            raise DegenerateOrder(
                "link for y{:d} has order {!s}".format(
                    unknown, format_fraction(order)),
                {'unknown': unknown, 'order': format_fraction(order)})
        if len(init) != ceil_int(order):
            raise MalformedFDE(
                "link of order {!s} needs {:d} initial values".format(
                    format_fraction(order), ceil_int(order)),
                {'unknown': unknown, 'init': len(init)})
        return super(Link, cls).__new__(cls, order, int(unknown), rhs, init)

    @classmethod
    def chain(cls, order, unknown, init):
        """ The chain link ``D^order y_unknown = y_{unknown+1}``. """
        return cls(order, unknown, {unknown + 1: 1}, init)


def unknown_name(index):
    return 'x' if index == 0 else 'y{:d}'.format(index)


class SplitSystem(object):
    """ An ordered system of :py:class:`Link` equations.

    Equation j defines unknown ``y_j``; ``y_0`` is the solution x.
    """

    def __init__(self, equations, kind):
        self.equations = tuple(equations)
        self.kind = kind
        for j, link in enumerate(self.equations):
            if link.unknown != j:
                raise NotAChain(
                    "equation {:d} defines y{:d}".format(j, link.unknown),
                    {'equation': j})
            if any(not 0 <= k < len(self.equations) for k in link.rhs):
                raise NotAChain(
                    "equation {:d} refers to an undefined unknown".format(j),
                    {'equation': j})

    @property
    def unknowns(self):
        return [unknown_name(j) for j in range(len(self.equations))]

    @property
    def orders(self):
        return [link.order for link in self.equations]

    @property
    def init(self):
        """ ``y_j(0)`` for every unknown. """
        return [link.init[0] for link in self.equations]

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def __repr__(self):
        return 'SplitSystem(kind={!s}, orders=[{!s}])'.format(
            self.kind, ', '.join(format_fraction(b) for b in self.orders))


def _announce(sender, system):
    log.info('split-built', kind=system.kind, equations=len(system))
    signal_split.send(sender, system=system)
    return system


def _closing_rhs(fde, slots):
    """ ``-(1/a_m) [a_0 y_0 + a_1 y_slots[0] + ..]`` as a mapping. """
    a_m = fde.a[-1]
    rhs = {0: -fde.a[0] / a_m}
    for a_k, index in zip(fde.a[1:-1], slots):
        rhs[index] = rhs.get(index, 0) - a_k / a_m
    return rhs


def build_split_2m1(fde, alpha1=None):
    """ Split into ``2m-1`` links of order at most 1.

    Unknowns alternate between integer derivatives ``y_{2i} = x^(i)`` and
    fractional ones ``y_{2i-1} = D^alpha_i x``, with orders

    - ``b_{2j} = alpha_{j+1} - j``
    - ``b_{2j+1} = (j+1) - alpha_{j+1}``

    and initial values ``y_{2i}(0) = C_i``, ``y_{2i-1}(0) = 0``.

    A one-term equation ``D^alpha x = lambda x`` is split at the interior
    order ``alpha1`` instead (``alpha / 2`` by default):
    ``D^alpha1 x = y, D^(alpha-alpha1) y = lambda x`` with ``y(0) = 0``.

    :raise OrderCellViolation: If some ``alpha_k`` is outside ``(k-1, k]``.
    :raise DegenerateOrder: If some link would get order 0.
    """
    fde.check_order_cells()
    if fde.m == 1:
        return _announce(build_split_2m1, _split_one_term(fde, alpha1))

    m = fde.m
    links = []
    for j in range(m):
        even = 2 * j
        order = fde.alpha[j] - j
        if j < m - 1:
            links.append(Link.chain(order, even, [fde.ics[j]]))
            odd_order = (j + 1) - fde.alpha[j]
            if odd_order == 0:
                raise DegenerateOrder(
                    "alpha_{:d} = {:d} gives a link of order 0; use the "
                    "chain split".format(j + 1, j + 1),
                    {'k': j + 1})
            links.append(Link.chain(odd_order, even + 1, [0]))
        else:
            slots = [2 * k - 1 for k in range(1, m)]
            links.append(Link(order, even, _closing_rhs(fde, slots),
                              [fde.ics[j]]))
    return _announce(build_split_2m1, SplitSystem(links, KIND_2M1))


def _split_one_term(fde, alpha1):
    alpha = fde.order
    alpha1 = alpha / 2 if alpha1 is None else to_fraction(alpha1)
    if not 0 < alpha1 < alpha:
        raise DegenerateOrder(
            "split order {!s} must lie inside (0, {!s})".format(
                format_fraction(alpha1), format_fraction(alpha)),
            {'alpha1': format_fraction(alpha1)})
    links = [
        Link.chain(alpha1, 0, [fde.ics[0]]),
        Link(alpha - alpha1, 1, _closing_rhs(fde, []), [0]),
    ]
    return SplitSystem(links, KIND_2M1)


def build_split_chain(fde):
    """ Split orders inside one unit cell into an ``m`` link chain.

    ``D^alpha_1 x = y_1``, ``D^(alpha_{j+1}-alpha_j) y_j = y_{j+1}``, and
    the last link carries ``-(1/a_m) [a_0 x + sum(a_j y_j)]``. The head
    keeps the initial values of x; every ``y_j(0)`` is 0.

    :raise CellViolation: If the orders span more than one unit cell.
    """
    fde.unit_cell()
    m = fde.m
    if m == 1:
        links = [Link(fde.order, 0, _closing_rhs(fde, []), fde.ics)]
        return _announce(build_split_chain, SplitSystem(links, KIND_CHAIN))

    links = [Link.chain(fde.alpha[0], 0, fde.ics)]
    for j in range(1, m - 1):
        links.append(Link.chain(fde.alpha[j] - fde.alpha[j - 1], j, [0]))
    links.append(Link(fde.alpha[m - 1] - fde.alpha[m - 2], m - 1,
                      _closing_rhs(fde, list(range(1, m))), [0]))
    return _announce(build_split_chain, SplitSystem(links, KIND_CHAIN))


def classify_two_term(fde):
    """ Case of a two-term equation by the order gap ``alpha_2 - alpha_1``.

    ``'i'`` for a gap in (1, 2), ``'ii'`` for (0, 1), ``'iii'`` for exactly 1.

    :raise MalformedFDE: For other equations.
    """
    if fde.m != 2:
        raise MalformedFDE("not a two-term equation", {'m': fde.m})
    gap = fde.alpha[1] - fde.alpha[0]
    if gap == 1:
        return 'iii'
    if 1 < gap < 2:
        return 'i'
    if 0 < gap < 1:
        return 'ii'
    raise MalformedFDE("order gap {!s} is outside (0, 2)".format(
        format_fraction(gap)), {'gap': format_fraction(gap)})


def naive_cut_orders(fde):
    """ The ``2m-2`` orders a naive cut is compared against.

    ``b_0 = alpha_1``, ``b_{2i-1} = i - alpha_i``,
    ``b_{2i} = alpha_{i+1} - i`` for ``i < m-1``, and
    ``b_{2m-3} = alpha_m - alpha_{m-1}``.
    """
    m = fde.m
    betas = [fde.alpha[0]]
    for i in range(1, m - 1):
        betas.append(i - fde.alpha[i - 1])
        betas.append(fde.alpha[i] - i)
    betas.append(fde.alpha[m - 1] - fde.alpha[m - 2])
    return betas


def _check_cut_orders(fde, betas):
    m = fde.m
    details = {'betas': [format_fraction(b) for b in betas]}
    if len(betas) != 2 * m - 2:
        raise MalformedFDE("need {:d} orders".format(2 * m - 2), details)
    if any(not b > 0 for b in betas):
        raise MalformedFDE("cut orders must be positive", details)
    ok = betas[0] == fde.alpha[0]
    for i in range(1, m - 1):
        ok = ok and fde.alpha[i - 1] + betas[2 * i - 1] + betas[2 * i] == \
            fde.alpha[i]
    ok = ok and fde.alpha[m - 2] + betas[-1] == fde.alpha[m - 1]
    if not ok:
        raise MalformedFDE("cut orders do not add up to the equation orders",
                           details)


def build_naive_split(fde, variant, betas=None, init=None):
    """ Build one of the non-equivalent splits.

    ``two_term_pair``
        ``D^alpha_1 x = y``,
        ``D^(alpha_2-alpha_1) y = -(a_0/a_2) x - (a_1/a_2) y``, where ``init``
        gives ``y(0), y'(0), ..`` (zeros by default).

    ``cut_2m2``
        the ``2m-2`` link chain ending in
        ``D^b y_{2m-3} = -(1/a_m) [a_0 y_0 + a_1 y_1 + a_2 y_3 + ..]``. The
        orders ``betas`` must add up to the equation orders (default
        :py:func:`naive_cut_orders`); ``init`` overrides ``y_1(0) ..``
        (by default ``y_{2i}(0) = C_i`` and odd unknowns start at 0).

    :raise MalformedFDE: For an unknown variant or an unsuitable equation.
    """
    kind = NAIVE_VARIANTS.get(variant, variant)
    if kind == KIND_NAIVE_PAIR:
        system = _naive_pair(fde, init)
    elif kind == KIND_NAIVE_CUT:
        system = _naive_cut(fde, betas, init)
    else:
        raise MalformedFDE("unknown naive variant {!r}".format(variant))
    return _announce(build_naive_split, system)


def _naive_pair(fde, init):
    if fde.m != 2:
        raise MalformedFDE("two_term_pair needs a two-term equation",
                           {'m': fde.m})
    head = fde.alpha[0]
    tail = fde.alpha[1] - head
    if init is None:
        init = [0] * ceil_int(tail)
    links = [
        Link.chain(head, 0, fde.ics[:ceil_int(head)]),
        Link(tail, 1, _closing_rhs(fde, [1]), init),
    ]
    return SplitSystem(links, KIND_NAIVE_PAIR)


def _naive_cut(fde, betas, init):
    m = fde.m
    if m < 2:
        raise MalformedFDE("cut_2m2 needs at least two terms", {'m': m})
    betas = naive_cut_orders(fde) if betas is None else list(_fractions(betas))
    _check_cut_orders(fde, betas)

    values = [fde.ics[0]]
    for j in range(1, 2 * m - 2):
        values.append(fde.ics[j // 2] if j % 2 == 0 else Fraction(0))
    if init is not None:
        init = _fractions(init)
        if len(init) != 2 * m - 3:
            raise MalformedFDE("need {:d} initial values".format(2 * m - 3),
                               {'init': len(init)})
        values[1:] = init

    def _init(j):
        # higher derivatives of a long link start at 0
        return [values[j]] + [0] * (ceil_int(betas[j]) - 1)

    last = 2 * m - 3
    links = [Link.chain(betas[j], j, _init(j)) for j in range(last)]
    slots = [2 * k - 1 for k in range(1, m)]
    links.append(Link(betas[last], last, _closing_rhs(fde, slots),
                      _init(last)))
    return SplitSystem(links, KIND_NAIVE_CUT)


def _shift_index(k, position):
    return k + 1 if k > position else k


def refine_split(system, equation_index, gamma):
    """ Cut one link ``D^b y = r`` into ``D^gamma y = w, D^(b-gamma) w = r``.

    The new unknown w starts at 0, which is only right when the cut keeps
    both parts in the unit cell of b: either ``b <= 1``, or
    ``ceil(gamma) == ceil(b)``.

    :raise InvalidRefinement: If the cut is not allowed.
    """
    gamma = to_fraction(gamma)
    if not 0 <= equation_index < len(system):
        raise InvalidRefinement(
            "no equation {!s}".format(equation_index),
            {'equation': equation_index})
    link = system.equations[equation_index]
    beta = link.order
    details = {'equation': equation_index,
               'order': format_fraction(beta),
               'gamma': format_fraction(gamma)}
    if not 0 < gamma < beta:
        raise InvalidRefinement("gamma must lie strictly inside (0, order)",
                                details)
    if beta > 1 and ceil_int(gamma) != ceil_int(beta):
        raise InvalidRefinement(
            "gamma must share the unit cell of the order", details)

    position = equation_index
    links = []
    for j, old in enumerate(system.equations):
        rhs = dict((_shift_index(k, position), c)
                   for k, c in old.rhs.items())
        if j < position:
            links.append(Link(old.order, j, rhs, old.init))
        elif j == position:
            links.append(Link.chain(gamma, j, old.init))
            rest = beta - gamma
            links.append(Link(rest, j + 1, rhs, [0] * ceil_int(rest)))
        else:
            links.append(Link(old.order, j + 1, rhs, old.init))

    log.debug('split-refined', equation=equation_index,
              gamma=format_fraction(gamma))
    return SplitSystem(links, system.kind)
