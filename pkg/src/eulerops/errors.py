"""Exceptions shared across the package."""


class EuleropsError(Exception):
    """Base class for all domain errors raised by this package."""


class ModelMismatchError(EuleropsError):
    """Operands live over bundles with different base/fiber dimensions."""


class UndefinedSymbolError(EuleropsError):
    """Principal symbol requested for the zero operator."""


class NotAFunctionError(EuleropsError):
    """A symbol that should have been momentum-free contains momenta."""


class JetNotZeroError(EuleropsError):
    """Jet factorization requested for a function whose jet does not vanish."""


class NotFilteredError(EuleropsError):
    """Graded part requested for a morphism that is not filtered."""


class ParseError(EuleropsError):
    """Lexical, syntactic or semantic error in an input expression.

    ``offset`` is the byte offset of the offending token in the input.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
