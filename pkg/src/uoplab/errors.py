"""Exception types shared across uoplab."""


class UoplabError(Exception):
    """Base class for every error raised by this package."""


class OddExponentAtNonSquare(UoplabError, ValueError):
    pass


class RankMismatch(UoplabError, ValueError):
    pass


class NotExactDivision(UoplabError, ArithmeticError):
    pass


class NotFiniteType(UoplabError):
    pass


class InvalidDatum(UoplabError, ValueError):
    pass


class ParseError(UoplabError, ValueError):
    pass


class ConfigError(UoplabError, ValueError):
    pass


class NotAntidominant(UoplabError, ValueError):
    pass


class SolveFailure(UoplabError, ArithmeticError):
    pass


class NotRightKInvariant(UoplabError, AssertionError):
    pass


class NotSpherical(UoplabError, ValueError):
    pass


class NotInvariant(UoplabError, ValueError):
    pass


class NotIntegral(UoplabError, ArithmeticError):
    pass


class CheckFailure(UoplabError):
    """A verification layer did not hold; ``layer`` names the first failure."""

    def __init__(self, layer, message=""):
        super().__init__(f"{layer}: {message}" if message else layer)
        self.layer = layer


class BoundaryClipped(UoplabError):
    pass


class ConductorTooSmall(UoplabError, ValueError):
    pass
