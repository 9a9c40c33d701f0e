"""Exception types. Each carries a stable ``code`` used in CLI error payloads."""


class LLipError(ValueError):
    code = "llip-error"


class InvalidRange(LLipError):
    code = "invalid-range"


class NonFiniteValue(LLipError):
    code = "non-finite-value"


class EmptyAdjacency(LLipError):
    code = "empty-adjacency"


class GridMismatch(LLipError):
    code = "grid-mismatch"


class NotInDomain(LLipError):
    code = "not-in-domain"


class InvalidParameter(LLipError):
    code = "invalid-parameter"


class NegativeBound(InvalidParameter):
    code = "negative-bound"


class InsufficientSamples(LLipError):
    code = "insufficient-samples"


class DegenerateProbe(LLipError):
    code = "degenerate-probe"


class BreakpointOverflow(LLipError):
    code = "breakpoint-overflow"


class SchemaError(LLipError):
    code = "schema-error"


class IllDefinedAtPoint(LLipError):
    """Two samples agree at a grid point but their images do not."""

    code = "ill-defined-at-point"

    def __init__(self, index, point, spread):
        self.index = int(index)
        self.point = tuple(float(c) for c in point)
        self.spread = float(spread)
        super().__init__(
            f"operator is not diagonal at grid point {self.index} {self.point}: "
            f"coincident inputs map to values {self.spread:.3g} apart"
        )
