"""
Semitree Errors
Exception hierarchy shared by the semigroup modules and the CLI
"""


class SemigroupError(ValueError):
    """Base class for every error raised by the semigroups package"""


class GcdNotOne(SemigroupError):
    def __init__(self, gens, d: int):
        self.gens = list(gens)
        self.d = d
        super().__init__(f"generators {self.gens} have gcd {d}, complement would be infinite")


class NotClosed(SemigroupError):
    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"complement is not closed: {a} + {b} = {a + b} is a gap")


class NotMember(SemigroupError):
    pass


class IndexBelowConductor(SemigroupError):
    pass


class ParseError(SemigroupError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class RootHasNoParent(SemigroupError):
    pass


class NotEffective(SemigroupError):
    pass


class OrdinaryInput(SemigroupError):
    pass


class NotOrdinary(SemigroupError):
    pass


class BadGenus(SemigroupError):
    pass


class BadParameter(SemigroupError):
    pass


class TrivialSemigroup(SemigroupError):
    pass


class NotApplicable(SemigroupError):
    pass


class BadSeed(SemigroupError):
    pass


class InsufficientRange(SemigroupError):
    pass


class LemmaViolation(SemigroupError):
    """An internal cross-check between two independent formulations disagreed"""
