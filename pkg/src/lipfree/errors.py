"""Exception hierarchy.

Every error raised by the library derives from :class:`LipfreeError`.
Input problems (bad files, bad parameters, violated preconditions) derive
from :class:`InputError`; the CLI maps those to exit code 2.
"""


class LipfreeError(Exception):
    pass


class InputError(LipfreeError):
    pass


class InvariantBreach(LipfreeError):
    """An internal consistency check failed. Never expected."""


# metric_core

class MetricError(InputError):
    pass


class IdentityViolation(MetricError):
    def __init__(self, p, value=None):
        self.p = p
        self.value = value
        if value is None:
            msg = f"identity violated at {p!r}"
        else:
            msg = f"identity violated at {p!r}: d={value}"
        super().__init__(msg)


class SymmetryViolation(MetricError):
    def __init__(self, p, q, dpq, dqp):
        self.p, self.q = p, q
        super().__init__(f"d({p},{q})={dpq} but d({q},{p})={dqp}")


class TriangleViolation(MetricError):
    def __init__(self, p, q, r, dpr, dpq, dqr):
        self.p, self.q, self.r = p, q, r
        super().__init__(f"d({p},{r})={dpr} > d({p},{q})+d({q},{r})={dpq}+{dqr}")


class UnknownBase(MetricError):
    pass


class ShapeError(MetricError):
    pass


class InvalidParams(InputError):
    pass


class ParseError(InputError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


# freespace / lipschitz_dual

class SpaceMismatch(InputError):
    pass


class InvalidMolecule(InputError):
    pass


class ZeroMolecule(InputError):
    pass


class TargetBelowNorm(InputError):
    pass


class SupportTooLarge(InputError):
    pass


class NotLipschitzOnSubset(InputError):
    def __init__(self, p, q, ratio, bound):
        self.p, self.q = p, q
        super().__init__(f"|f({p})-f({q})|/d = {ratio} exceeds L = {bound}")


# trapezoid

class EmptyPool(InputError):
    pass


class EmptyN(InputError):
    pass


# doh_probe

class DecompositionMismatch(InputError):
    pass


class NotUnit(InputError):
    pass


class NonPolyhedralOracle(InputError):
    pass


class UnboundedModel(InvariantBreach):
    pass


class CertificateNotViolating(InputError):
    def __init__(self, index, detail=""):
        self.index = index
        super().__init__(f"certificate {index} does not violate its inequality {detail}".rstrip())


class DeltaTooLarge(InputError):
    pass


class CostNotOne(InputError):
    pass


class TelescopeMismatch(InputError):
    pass


class PremiseViolated(InputError):
    def __init__(self, premise, witness):
        self.premise = premise
        self.witness = witness
        super().__init__(f"premise {premise} violated: {witness}")


# normed_gallery

class DegeneratePolygon(InputError):
    pass


class EpsTooLarge(InputError):
    pass


class EpsOutOfRange(InputError):
    pass


class GNotInBall(InputError):
    pass


class LiftMismatch(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


class NoStrictViolation(InputError):
    pass
