"""Exception hierarchy shared by all modules."""


class SigmaError(Exception):
    """Base class for every error raised by this package."""


class StructurallyIllPosed(SigmaError):
    """The signature matrix has no finite transversal."""


class StructurallySingular(SigmaError):
    """A sparsity pattern contains no transversal."""


class InfinitePosition(SigmaError):
    """A transversal touches a position where sigma is minus infinity."""


class InvalidOffsets(SigmaError):
    """Offsets that were required to be valid are not."""


class TransversalNotInPattern(SigmaError):
    pass


class NotBlockConstant(SigmaError):
    """c - c_hat is not constant on some fine block, so c is not a general offset vector."""


class NotASolution(SigmaError):
    """A lead-time vector violates a block inequality."""


class NotSurjective(SigmaError):
    pass


class TooLarge(SigmaError):
    """Refused to run an exponential brute-force search on a big instance."""


class InternalNonConvergence(RuntimeError):
    """A fixpoint iteration exceeded its proven cap. Indicates a bug."""


class InternalCycle(RuntimeError):
    """A graph that must be acyclic contains a cycle. Indicates a bug."""


class FormatError(SigmaError):
    """Malformed .sig or .dae input."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DaeSyntaxError(FormatError):
    pass


class UndeclaredIdentifier(FormatError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        super().__init__(f"undeclared identifier {name!r}", line, column)


class CountMismatch(FormatError):
    pass
