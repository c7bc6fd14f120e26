# coding: utf-8


class QFockError(Exception):
    pass


class UndefinedValueError(QFockError):
    pass


class UsageError(QFockError, ValueError):
    """
    Invalid input: unknown type, unsupported rank, bad letter or diagram.
    """


class DivisionByZero(QFockError, ZeroDivisionError):
    pass


class PoleError(QFockError, ZeroDivisionError):
    """
    A rational function was evaluated where its denominator vanishes.
    """


class DivergentProductError(QFockError, ValueError):
    pass


class TheoremViolation(QFockError, ArithmeticError):
    """
    A computation contradicted an identity that must hold, e.g. a singular
    fixed-point system or a boson commutator not proportional to the vacuum.
    """
