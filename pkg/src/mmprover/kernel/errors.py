"""Error types raised by the Metamath kernel.

Every error carries enough position information (line, column, statement
label) for a UI to point at the offending source.
"""

from __future__ import annotations


class MMError(Exception):
    """Base class for kernel errors."""

    def __init__(self, message: str, *, line: int | None = None,
                 col: int | None = None, label: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.label = label
        super().__init__(self._format())

    def _format(self) -> str:
        where = []
        if self.label is not None:
            where.append(self.label)
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.col is not None:
            where.append(f"col {self.col}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message


class LexicalError(MMError):
    """Malformed token or character outside the Metamath charset."""


class ScopeError(MMError):
    """Unbalanced ``${``/``$}`` or statement not allowed in this scope."""


class DuplicateLabelError(MMError):
    """A label was declared twice."""


class UndeclaredSymbolError(MMError):
    """A math token was used before any ``$c``/``$v`` declared it."""


class GrammarError(MMError):
    """Base for term-parsing failures."""


class NoParseError(GrammarError):
    """Token string is not grammatical at the requested typecode."""


class AmbiguousParseError(GrammarError):
    """More than one parse tree exists: a grammar defect, never resolved silently."""


class TypecodeMismatchError(MMError):
    """A substitution maps a variable to a term of the wrong typecode."""


class ProofError(MMError):
    """Base for proof verification failures; ``step`` is the failing proof step index."""

    def __init__(self, message: str, *, step: int | None = None, **kw):
        self.step = step
        if step is not None:
            message = f"{message} [proof step {step}]"
        super().__init__(message, **kw)


class StackUnderflowError(ProofError):
    pass


class UnificationError(ProofError):
    pass


class DVViolationError(ProofError):
    def __init__(self, message: str, violations=None, **kw):
        self.violations = list(violations or [])
        super().__init__(message, **kw)


class ForwardReferenceError(ProofError):
    """Proof cites a statement with an equal or later library index."""


class MalformedProofError(ProofError):
    """Bad compressed encoding, unknown label, or incomplete (``?``) proof."""


class OpenGoalError(MMError):
    """Proof tree still has open goals; export is impossible."""
