"""Error taxonomy shared by the library and the command line.

Every error carries a stable ``code`` string and the process exit status
the CLI uses for it (2 for mathematical domain errors, 3 for resource caps).
"""


class DedekindError(ValueError):
    code = "error"
    exit_status = 2

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details


class InvalidArgument(DedekindError):
    code = "invalid-argument"


class DivisionByZero(DedekindError, ZeroDivisionError):
    code = "division-by-zero"


class NotIrreducible(DedekindError):
    code = "not-irreducible"


class InvalidBasis(DedekindError):
    code = "invalid-basis"


class BasisRequired(DedekindError):
    code = "basis-required"


class IndexDivisorUnsupported(DedekindError):
    code = "index-divisor-unsupported"


class AutomorphismsRequired(DedekindError):
    code = "automorphisms-required"


class InvalidAutomorphism(DedekindError):
    code = "invalid-automorphism"


class PrimitiveElementNotFound(DedekindError):
    code = "primitive-element-not-found"


class RamifiedPrime(DedekindError):
    code = "ramified-prime"


class MethodUnavailable(DedekindError):
    code = "method-unavailable"


class NotAWitnessCase(DedekindError):
    code = "not-a-witness-case"


class NotUnimodular(DedekindError):
    code = "not-unimodular"


class NotInRing(DedekindError):
    code = "not-in-ring"


class UnsupportedRing(DedekindError):
    code = "unsupported-ring"


class LevelCapExceeded(DedekindError):
    code = "level-cap"
    exit_status = 3


class ResidueCapExceeded(DedekindError):
    code = "residue-cap-exceeded"
    exit_status = 3


class SearchCap(DedekindError):
    code = "search-cap"
    exit_status = 3
