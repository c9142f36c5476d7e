"""
Exception hierarchy for the q-congruence lab
"""


class QCLabError(Exception):
    """Base class for every error raised by the library"""


class ConfigError(QCLabError):
    """Invalid command line or configuration values"""


# Exact polynomial arithmetic

class NonInvertibleSubstitution(QCLabError):
    """Substituting a non-monomial for a variable that occurs with a negative exponent"""


class EvalAtPole(QCLabError):
    """A variable with a negative exponent was evaluated at zero"""


class MissingAssignment(QCLabError):
    """Evaluation was asked for without a value for every variable"""


class NotUnivariate(QCLabError):
    """Operation needs a polynomial in q alone"""


class NegativeExponent(QCLabError):
    """Operation needs nonnegative exponents"""


class ZeroDivisor(QCLabError):
    """Division by the zero polynomial"""


# q-series objects

class InternalNonExactDivision(QCLabError):
    """A division that must be exact left a remainder"""


class VanishingDenominator(QCLabError):
    """A denominator factor of a truncated series is zero"""


class UnknownCheckId(QCLabError):
    """The check id is not in the registry"""


class InvalidParams(QCLabError):
    """Parameters are missing, of the wrong type or out of range"""


class PreconditionViolated(QCLabError):
    """Parameters do not satisfy the hypotheses of the statement"""


# Residue arithmetic and number theory

class NotPrime(QCLabError):
    """A prime was required"""


class EvenPrimeUnsupported(NotPrime):
    """p = 2 is rejected; every statement assumes an odd prime"""


class NotInvertible(QCLabError):
    """The element shares a factor with the modulus"""


class DenominatorDivisibleByP(QCLabError):
    """A rational residue was asked for a denominator divisible by p"""


class NoRepresentation(QCLabError):
    """The prime is not a sum of two squares"""


class DenominatorNotInvertible(QCLabError):
    """A denominator of an integer sum is not a unit modulo p^e"""


class NoClassicalCounterpart(QCLabError):
    """The check has no q = 1 counterpart"""
