"""Exception hierarchy.  Everything raised on purpose derives from BiHomError."""


class BiHomError(Exception):
    pass


class ParseError(BiHomError, ValueError):
    pass


class DimensionMismatch(BiHomError, ValueError):
    pass


class AmbientMismatch(DimensionMismatch):
    pass


class IndexOutOfRange(BiHomError, IndexError):
    pass


class ArityMismatch(BiHomError, ValueError):
    pass


class NonCommutingTwists(BiHomError, ValueError):
    pass


class InvalidTrace(BiHomError, ValueError):
    pass


class InvalidParams(BiHomError, ValueError):
    pass


class NotAnIdeal(BiHomError, ValueError):
    pass


class NotComplementary(BiHomError, ValueError):
    pass
