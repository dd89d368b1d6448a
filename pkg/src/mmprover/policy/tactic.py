"""The tactic text format shared by all suggestion backends.

A tactic is rendered as the applied theorem's statement followed by the
substitution list::

    [[ |- A = B |- C = B ]] |- A = C {{ A : U. U. `' A }} {{ B : ... }}

Parsing resolves the statement part to a database theorem by exact
canonical-text lookup and type-checks every substituted term through the
kernel grammar. All failures raise a :class:`TacticError` subclass so the
search can count them without crashing.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..kernel import Assertion, Database, Expr, apply_assertion
from ..kernel.errors import DVViolationError, GrammarError, MMError


class TacticError(MMError):
    """Base for tactic parse/application failures; ``reason`` keys counters."""
    reason = "invalid"


class TacticSyntaxError(TacticError):
    reason = "parse_error"


class UnknownStatementError(TacticError):
    reason = "unknown_statement"


class SubstitutionError(TacticError):
    reason = "bad_substitution"


class ConclusionMismatchError(TacticError):
    reason = "conclusion_mismatch"


class CeilingError(TacticError):
    reason = "library_ceiling"


@dataclass(frozen=True)
class ParsedTactic:
    assertion: Assertion
    subst: dict[str, Expr]

    def text(self, db: Database) -> str:
        return format_tactic(db, self.assertion.label, self.subst)


def format_tactic(db: Database, label: str, subst: dict[str, Expr]) -> str:
    """Canonical tactic text: theorem statement plus sorted substitutions."""
    stmt = db.by_label[label].statement_text()
    parts = [stmt]
    for v in sorted(subst):
        parts.append(f"{{{{ {v} : {' '.join(subst[v])} }}}}")
    return " ".join(parts)


def _split_sections(tokens: list[str]):
    if not tokens or tokens[0] != "[[":
        raise TacticSyntaxError("tactic must start with '[['")
    try:
        close = tokens.index("]]")
    except ValueError:
        raise TacticSyntaxError("tactic lacks ']]'")
    hyp_tokens = tokens[1:close]
    rest = tokens[close + 1:]
    # conclusion runs until the first substitution group
    concl = []
    i = 0
    while i < len(rest) and rest[i] != "{{":
        concl.append(rest[i])
        i += 1
    subs = []
    while i < len(rest):
        if rest[i] != "{{":
            raise TacticSyntaxError("expected '{{'")
        try:
            end = rest.index("}}", i)
        except ValueError:
            raise TacticSyntaxError("substitution lacks '}}'")
        group = rest[i + 1:end]
        if len(group) < 3 or group[1] != ":":
            raise TacticSyntaxError("substitution must be '{{ var : term }}'")
        subs.append((group[0], tuple(group[2:])))
        i = end + 1
    if not concl:
        raise TacticSyntaxError("tactic lacks a conclusion")
    return hyp_tokens, tuple(concl), subs


def parse_tactic(db: Database, text: str,
                 ceiling: int | None = None) -> ParsedTactic:
    """Parse tactic text into (theorem, substitution), fully type-checked."""
    tokens = text.split()
    hyp_tokens, concl, subs = _split_sections(tokens)
    stmt_text = "[[ " + " ".join(hyp_tokens) + " ]] " + " ".join(concl) \
        if hyp_tokens else "[[ ]] " + " ".join(concl)
    asrt = db.lookup_statement(stmt_text)
    if asrt is None:
        raise UnknownStatementError(f"no database statement matches {stmt_text!r}")
    if ceiling is not None and asrt.index >= ceiling:
        later = db.lookup_statement(stmt_text, ceiling)
        if later is None:
            raise CeilingError(
                f"{asrt.label} (index {asrt.index}) is beyond the library "
                f"ceiling {ceiling}")
        asrt = later
    frame = asrt.frame
    subst: dict[str, Expr] = {}
    for v, term_tokens in subs:
        tc = frame.var_types.get(v)
        if tc is None:
            raise SubstitutionError(
                f"{v!r} is not a mandatory variable of {asrt.label}")
        if v in subst:
            raise SubstitutionError(f"variable {v!r} substituted twice")
        try:
            db.grammar.parse(tc, term_tokens)
        except GrammarError as e:
            raise SubstitutionError(
                f"term for {v} is not a {tc}: {e.message}")
        subst[v] = tuple(term_tokens)
    missing = [v for v in frame.mand_vars if v not in subst]
    if missing:
        raise SubstitutionError(
            f"substitution misses mandatory variables {missing} of {asrt.label}")
    return ParsedTactic(asrt, subst)


def apply_tactic(db: Database, tactic: ParsedTactic, goal_expr: Expr,
                 dv_all=frozenset()) -> list[Expr]:
    """Check the substituted conclusion against the goal; return subgoals."""
    try:
        concl, hyps = apply_assertion(db, tactic.assertion, tactic.subst, dv_all)
    except DVViolationError:
        raise
    except MMError as e:
        raise SubstitutionError(str(e))
    if concl != tuple(goal_expr):
        raise ConclusionMismatchError(
            f"substituted conclusion {' '.join(concl)} does not match the "
            f"goal {' '.join(goal_expr)}")
    return hyps
