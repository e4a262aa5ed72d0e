"""Exception hierarchy shared by every quatkit module."""


class QuatkitError(Exception):
    """Base class for all library errors."""


class ModeMismatchError(QuatkitError, TypeError):
    """Exact and float scalars met in one operation."""


class UnsupportedOperationError(QuatkitError):
    """The operation leaves the scalar mode (e.g. a square root of a rational)."""


class QuaternionZeroDivisionError(QuatkitError, ZeroDivisionError):
    pass


class InvalidTableError(QuatkitError, ValueError):
    pass


class InvalidArgumentError(QuatkitError, ValueError):
    pass


class NumericDomainError(QuatkitError, ArithmeticError):
    """A function evaluation produced a NaN or an infinity."""


class ExprError(QuatkitError):
    """Error located in an expression's source text."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.pos is None:
            return self.message
        out = f"{self.message} at position {self.pos}"
        if self.text is not None:
            out += f"\n  {self.text}\n  {' ' * self.pos}^"
        return out


class LexError(ExprError):
    pass


class ParseError(ExprError):
    pass


class ExponentOverflowError(ExprError):
    pass


class EvalError(ExprError):
    pass
