"""Exception types shared across the package."""


class SolenoidError(Exception):
    pass


class FamilyMismatch(SolenoidError, ValueError):
    pass


class BadGeneratorIndex(SolenoidError, IndexError):
    pass


class InvalidFamily(SolenoidError, ValueError):
    pass


class InvalidSubgroup(SolenoidError, ValueError):
    pass


class NotStructural(SolenoidError):
    """Raised when a subgroup has no explicit generating set (e.g. an action kernel)."""


class NotDescending(SolenoidError):
    def __init__(self, level: int, message: str = ""):
        self.level = level
        super().__init__(message or f"level {level + 1} is not contained in level {level}")


class EnumerationBudgetExceeded(SolenoidError):
    pass


class OrbitBudgetExceeded(SolenoidError):
    pass


class SearchBudgetExceeded(SolenoidError):
    pass


class BadIndex(SolenoidError, IndexError):
    pass


class WrongFamily(SolenoidError, ValueError):
    pass


class DepthExceedsVerified(SolenoidError):
    pass


class WitnessInvalid(SolenoidError):
    pass


class InvalidMorphism(SolenoidError):
    pass


class BadIndices(SolenoidError, ValueError):
    pass


class InvalidSpec(SolenoidError, ValueError):
    pass


class OracleMismatch(SolenoidError, AssertionError):
    pass


class BadWord(SolenoidError, ValueError):
    pass
