# encoding: utf-8
""" Problem files.

A problem file describes a multi-term equation and, optionally, how to split
it. JSON and YAML are both accepted: ::

    {
        "a": ["1", "1", "1"],
        "alpha": ["1/2", "3/2"],
        "ics": ["1", "1"],
        "split": {"kind": "2m1"}
    }

Rationals are written as ``"p/q"`` strings (decimal strings and numbers are
read exactly), and are always written back as ``"p/q"`` strings.

Split block
-----------
``kind``
    one of ``2m1``, ``chain``, ``naive_pair``, ``naive_cut``
``alpha1``
    interior split order of a one-term equation (``2m1`` only)
``betas``
    the orders of a ``naive_cut``
``init``
    initial values of the added unknowns of a naive split
``refine``
    a list of ``{"index": j, "gamma": "1/4"}`` cuts, applied in order

"""
import json
import os
from collections import namedtuple

import structlog
import yaml
from marshmallow import (Schema, ValidationError, fields, post_load,
                         validate, validates_schema)

from .errors import ConstructionError, SchemaError, UsageError
from .rational import format_fraction, to_fraction
from .splitter import (KIND_2M1, KIND_CHAIN, KIND_NAIVE_CUT, KIND_NAIVE_PAIR,
                       KINDS, MultiTermFDE, build_naive_split,
                       build_split_2m1, build_split_chain, refine_split,
                       unknown_name)


log = structlog.get_logger(__name__)


class RationalField(fields.Field):
    """ An exact rational, written as a ``"p/q"`` string. """

    default_error_messages = {
        'invalid': 'Not a rational number.',
    }

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return format_fraction(value)

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return to_fraction(value)
        except ValueError:
            raise self.make_error('invalid')


class ProblemSpec(namedtuple('ProblemSpec', ('fde', 'split'))):
    """ A loaded problem: the equation and the split block (or None). """

    __slots__ = ()

    @property
    def a(self):
        return self.fde.a

    @property
    def alpha(self):
        return self.fde.alpha

    @property
    def ics(self):
        return self.fde.ics


class RefineSchema(Schema):
    """ One :py:func:`fracsplit.splitter.refine_split` cut. """
    index = fields.Integer(required=True, validate=validate.Range(min=0))
    gamma = RationalField(required=True)


class SplitSpecSchema(Schema):
    """ The split block. """
    kind = fields.String(required=True, validate=validate.OneOf(KINDS))
    alpha1 = RationalField()
    betas = fields.List(RationalField())
    init = fields.List(RationalField())
    refine = fields.List(fields.Nested(RefineSchema))


class ProblemSpecSchema(Schema):
    """ A multi-term equation with an optional split block. """
    a = fields.List(RationalField(), required=True,
                    validate=validate.Length(min=2))
    alpha = fields.List(RationalField(), required=True,
                        validate=validate.Length(min=1))
    ics = fields.List(RationalField(), required=True,
                      validate=validate.Length(min=1))
    split = fields.Nested(SplitSpecSchema, allow_none=True)

    @validates_schema
    def validate_lengths(self, data, **kwargs):
        if len(data['alpha']) != len(data['a']) - 1:
            raise ValidationError(
                "need len(a) - 1 orders", field_name='alpha')

    @post_load
    def make_problem(self, data, **kwargs):
        try:
            fde = MultiTermFDE(data['a'], data['alpha'], data['ics'])
        except ConstructionError as e:
            raise ValidationError(e.message, field_name='_schema')
        return ProblemSpec(fde, data.get('split'))


class LinkSchema(Schema):
    """ One equation of a split system (dump only). """
    unknown = fields.Function(lambda link: unknown_name(link.unknown))
    order = RationalField()
    rhs = fields.Function(lambda link: dict(
        (unknown_name(k), format_fraction(v))
        for k, v in sorted(link.rhs.items())))
    init = fields.List(RationalField())


class SplitSystemSchema(Schema):
    """ A split system (dump only). """
    kind = fields.String()
    unknowns = fields.List(fields.String())
    orders = fields.List(RationalField())
    init = fields.List(RationalField())
    equations = fields.List(fields.Nested(LinkSchema))


def parse_problem(data):
    """ Validate and load a problem from plain data.

    :raise SchemaError: If the data is not a valid problem.
    :rtype: ProblemSpec
    """
    try:
        return ProblemSpecSchema().load(data)
    except ValidationError as e:
        log.info('problem-invalid', errors=e.messages)
        raise SchemaError("invalid problem specification", e.messages)


def load_problem(filename):
    """ Load a problem file (``.json``, ``.yml`` or ``.yaml``).

    :raise SchemaError: For unknown formats or invalid content.
    :raise UsageError: If the file cannot be read.
    """
    ext = os.path.splitext(filename)[1]
    if ext == '.json':
        loader = json.load
    elif ext in ('.yml', '.yaml'):
        loader = yaml.safe_load
    else:
        raise SchemaError(
            "Unable to load problem from '{!s}'".format(filename),
            {'filename': filename})
    try:
        with open(filename, 'r') as f:
            data = loader(f)
    except (OSError, IOError) as e:
        raise UsageError(str(e), {'filename': filename})
    except (ValueError, yaml.YAMLError) as e:
        raise SchemaError("unable to parse '{!s}'".format(filename),
                          {'filename': filename, 'error': str(e)})
    log.debug('problem-loaded', filename=filename)
    return parse_problem(data)


def dump_problem(problem):
    return ProblemSpecSchema().dump(problem)


def dump_system(system):
    return SplitSystemSchema().dump(system)


def build_system(problem, kind=None):
    """ Build the split system a problem asks for.

    :param ProblemSpec problem: The problem.
    :param str kind: Split kind to use when the problem has no split block.

    :raise SchemaError: If no split kind is known.
    """
    split = problem.split or {}
    kind = split.get('kind', kind)
    fde = problem.fde
    if kind == KIND_2M1:
        system = build_split_2m1(fde, split.get('alpha1'))
    elif kind == KIND_CHAIN:
        system = build_split_chain(fde)
    elif kind == KIND_NAIVE_PAIR:
        system = build_naive_split(fde, 'two_term_pair',
                                   init=split.get('init'))
    elif kind == KIND_NAIVE_CUT:
        system = build_naive_split(fde, 'cut_2m2', betas=split.get('betas'),
                                   init=split.get('init'))
    else:
        raise SchemaError("problem has no split block", {'kind': kind})

    for cut in split.get('refine', ()):
        system = refine_split(system, cut['index'], cut['gamma'])
    return system
