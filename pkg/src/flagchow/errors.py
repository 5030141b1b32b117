"""Exception types raised across the package."""


class FlagchowError(Exception):
    pass


class ParseError(FlagchowError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f": {text[:position]}<<>>{text[position:]}"
        super().__init__(message)


class NotPLocalError(FlagchowError, ValueError):
    """A rational number whose denominator is divisible by p."""


class PrimeMismatchError(FlagchowError, ValueError):
    pass


class InhomogeneousError(FlagchowError, ValueError):
    pass


class TruncationError(FlagchowError, ValueError):
    """A request reaches past the degree the data was computed through."""


class ContainmentError(FlagchowError, ValueError):
    """An ideal is not contained in another one."""


class DegreeUnderflowError(FlagchowError, ValueError):
    """A torsion class would land in non-positive degree."""


class TableError(FlagchowError, KeyError):
    """An operation table lacks the data needed for a computation."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InconsistentFactsError(FlagchowError, ValueError):
    def __init__(self, generator, reasons):
        self.generator = generator
        self.reasons = list(reasons)
        super().__init__(
            f"facts about {generator} are inconsistent: " + "; ".join(self.reasons)
        )


class UnresolvedError(FlagchowError, ValueError):
    pass


class PreconditionError(FlagchowError, ValueError):
    pass
