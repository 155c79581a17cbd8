"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CatFracError(Exception):
    """Base class for all errors raised by catfrac."""


class ParseError(CatFracError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ParallelismError(CatFracError):
    """Two roofs (or strings) that must be parallel are not."""


class ComposabilityError(CatFracError):
    """Two roofs that must be composable are not."""


class NoWitness(CatFracError):
    """An existence search came back empty, e.g. an (L1) square for (w, f)."""

    def __init__(self, message: str, pair: tuple[int, ...] = ()):
        self.pair = pair
        super().__init__(message)


class AxiomFailure(CatFracError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"axiom {report.axiom} fails with witness {report.witness}")


class NotLocal(CatFracError):
    """A functor sends some member of W to a non-invertible morphism."""

    def __init__(self, w: int):
        self.w = w
        super().__init__(f"image of W-member {w} is not an isomorphism")


class Disagreement(CatFracError):
    """The word oracle certified a verdict contradicting the roof calculus."""

    def __init__(self, r1, r2, verdict: str):
        self.roofs = (r1, r2)
        self.verdict = verdict
        super().__init__(f"oracle says {verdict} for roofs {r1} and {r2}")


class BoundsError(CatFracError):
    pass
