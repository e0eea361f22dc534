# encoding: utf-8
""" Error types and exit codes.

Every error raised by fracsplit is a :py:class:`FracsplitError`. The error
classes double as the command line exit code contract:

====  =====================================================
code  meaning
====  =====================================================
0     success / equivalent
1     not equivalent
2     usage error (bad arguments, schema errors, domain errors)
3     series did not converge
4     construction error (a split or transform cannot be built)
5     inconclusive verdict
====  =====================================================

"""
import blinker


EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_NON_CONVERGENCE = 3
EXIT_CONSTRUCTION = 4
EXIT_INCONCLUSIVE = 5


class ErrorType(type):
    """ Automatically populates an `error_type` class attribute.

    The error_type is generated from the class name, if not explicitly given in
    the class.
    """

    def __init__(cls, name, bases, dct):
        cls.error_type = dct.get('error_type', '')
        if not cls.error_type:
            for char in name:
                if char.isupper() and cls.error_type:
                    cls.error_type += '-'
                cls.error_type += char.lower()
        super(ErrorType, cls).__init__(name, bases, dct)


class FracsplitError(Exception, metaclass=ErrorType):
    """ Abstract, generic fracsplit error.

    You'll typically want to create a subclass of this for each specific error
    scenario.

    Example:

    >>> class WrongShape(FracsplitError):
    ...     exit_code = 4
    >>> WrongShape.error_type
    'wrong-shape'

    """

    exit_code = 1

    def __init__(self, message=None, details=None):
        super(FracsplitError, self).__init__(message or self.error_type)
        self.message = message or self.error_type
        self.details = details or None

    def __str__(self):
        return '{!s}: {!s}'.format(self.error_type, self.message)

    def __repr__(self):
        return "{!s}(exit_code={!s}, message={!r}, details={!r})".format(
            self.__class__.__name__,
            self.exit_code,
            self.message,
            self.details)

    def to_dict(self):
        """ A JSON friendly description of this error. """
        return {
            'error': self.error_type,
            'message': self.message,
            'details': self.details or {},
        }

    @classmethod
    def subtypes(cls):
        """ Recursively list all subtypes of this type. """
        for sub in cls.__subclasses__():
            for subsub in sub.subtypes():
                yield subsub
            yield sub


class UsageError(FracsplitError):
    """ Invalid input from the caller. """
    exit_code = EXIT_USAGE


class SchemaError(UsageError):
    """ A problem specification failed validation. """


class DomainError(UsageError):
    """ A function argument is outside the supported domain. """


class StepTooCoarse(UsageError):
    """ The time grid has too few steps. """


class NonConvergence(FracsplitError):
    """ A series did not meet its truncation rule within the term budget. """
    exit_code = EXIT_NON_CONVERGENCE


class ConstructionError(FracsplitError):
    """ A split system or transform cannot be constructed. """
    exit_code = EXIT_CONSTRUCTION


class MalformedFDE(ConstructionError):
    """ The multi-term equation violates its own invariants. """
    error_type = 'malformed-fde'


class OrderCellViolation(ConstructionError):
    """ Some order alpha_k lies outside (k-1, k]. """


class DegenerateOrder(ConstructionError):
    """ A chain link would get order zero. """


class CellViolation(ConstructionError):
    """ The orders do not share one unit cell (p, p+1]. """


class InvalidRefinement(ConstructionError):
    """ A chain link cannot be cut at the requested order. """


class NotAChain(ConstructionError):
    """ The split system is not a chain of links. """


class ShapeError(ConstructionError):
    """ An s-domain expression does not match the Mittag-Leffler pair shape. """


class UnsupportedExponent(ConstructionError):
    """ A power t^beta outside the termwise Caputo formula. """


class UnsupportedOrder(ConstructionError):
    """ An equation order the time stepper cannot handle. """


def list_error_types():
    """ Lists all FracsplitError error types.

    This is useful for documentation. It allows us to list out all the
    possible errors and their exit codes.
    """
    return list(sorted(FracsplitError.subtypes(), key=lambda e: e.error_type))


signal_error = blinker.signal('fracsplit.error')
""" FracsplitError signal.

This signal is sent from the command line error handler.

The sender is the exception type (which allows receivers to connect only to
certain types). The exception itself is sent as a keyword argument,
``exception``.
"""
