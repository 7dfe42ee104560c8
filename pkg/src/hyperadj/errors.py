"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class AdjointError(Exception):
    """Base class for every error raised by this package."""

    kind = "AdjointError"


class InputError(AdjointError):
    """Malformed or inconsistent user input."""

    kind = "InputError"


class TowerMismatch(AdjointError, TypeError):
    kind = "TowerMismatch"


class DivisionByZero(AdjointError, ZeroDivisionError):
    kind = "DivisionByZero"


class BadLevel(AdjointError, IndexError):
    kind = "BadLevel"


class UnknownSymbol(InputError, KeyError):
    kind = "UnknownSymbol"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class UnknownVariable(UnknownSymbol):
    kind = "UnknownVariable"


class VariableMismatch(AdjointError, TypeError):
    kind = "VariableMismatch"


class NonHomogeneous(InputError, ValueError):
    kind = "NonHomogeneous"


class FormatError(InputError, ValueError):
    kind = "FormatError"


class ParseError(InputError, ValueError):
    """Syntax error in a polynomial / series / field element string."""

    kind = "SyntaxError"

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.text = text
        self.position = position


class PrecisionExhausted(AdjointError):
    """A truncated series ran out of known coefficients.

    ``operation`` names what was being computed and ``required`` is the
    frontier that would have been needed (``None`` when unknown).
    """

    kind = "PrecisionExhausted"

    def __init__(self, operation: str, required: int | None = None, detail: str = ""):
        msg = f"precision exhausted in {operation}"
        if required is not None:
            msg += f" (required frontier >= {required})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.operation = operation
        self.required = required


class NoUsablePartial(PrecisionExhausted):
    kind = "NoUsablePartial"


class FrontierTooSmall(PrecisionExhausted):
    kind = "FrontierTooSmall"


class HintMismatch(AdjointError):
    kind = "HintMismatch"


class DegenerateCurve(InputError):
    kind = "DegenerateCurve"
