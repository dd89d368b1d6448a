"""Metamath database parsing.

Parses the official ``.mm`` format (``$c $v $f $e $d $a $p`` statements,
``${ $}`` scoping, comments, compressed proofs) into an immutable
:class:`Database`. Proofs are kept undecoded until verification.

``$[ $]`` file inclusions must be resolved before parsing; see
:func:`resolve_includes`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from sys import intern

from .errors import (
    DuplicateLabelError,
    LexicalError,
    ScopeError,
    UndeclaredSymbolError,
)

Expr = tuple[str, ...]  # typecode followed by math tokens

_ALLOWED = set(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
    "`~!@#$%^&*()-_=+[]{};:'\",.<>/?\\|"
)


def _check_token(tok: str, line: int, col: int) -> None:
    bad = set(tok) - _ALLOWED
    if bad:
        raise LexicalError(f"illegal character {bad.pop()!r} in token {tok!r}",
                           line=line, col=col)


def tokenize(text: str):
    """Yield (token, line, col) triples, skipping ``$( ... $)`` comments."""
    in_comment = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        col = 0
        for tok in raw.split():
            col = raw.index(tok, col) + 1
            if in_comment:
                if tok == "$)":
                    in_comment = False
                elif tok == "$(":
                    raise LexicalError("nested comment", line=lineno, col=col)
                col += len(tok) - 1
                continue
            if tok == "$(":
                in_comment = True
            elif tok == "$)":
                raise LexicalError("comment close without open", line=lineno, col=col)
            else:
                _check_token(tok, lineno, col)
                yield intern(tok), lineno, col
            col += len(tok) - 1
    if in_comment:
        raise LexicalError("unterminated comment", line=0, col=0)


def resolve_includes(text: str, read_file) -> str:
    """Splice ``$[ path $]`` directives, each file at most once (keeps the parser single-input)."""
    seen: set[str] = set()

    def expand(src: str) -> str:
        out: list[str] = []
        toks = src.split()
        i = 0
        while i < len(toks):
            if toks[i] == "$[":
                if i + 2 >= len(toks) or toks[i + 2] != "$]":
                    raise ScopeError("malformed $[ $] include")
                path = toks[i + 1]
                if path not in seen:
                    seen.add(path)
                    out.append(expand(read_file(path)))
                i += 3
            else:
                out.append(toks[i])
                i += 1
        return " ".join(out)

    return expand(text)


@dataclass(frozen=True)
class Hypothesis:
    label: str
    kind: str          # 'f' | 'e'
    expr: Expr         # $f: (typecode, var); $e: typecode + tokens
    seq: int           # global declaration order
    scope_id: int

    @property
    def var(self) -> str:
        return self.expr[1]


@dataclass(frozen=True)
class Frame:
    """Extended frame of an assertion.

    ``mand_hyps`` holds mandatory ``$f`` and all ``$e`` in declaration
    order; ``dv`` is restricted to mandatory variables while ``dv_all``
    keeps every active pair (needed to license dummy variables when this
    statement is the one being proved).
    """

    mand_hyps: tuple[Hypothesis, ...]
    mand_vars: tuple[str, ...]                 # mandatory $f variables, in order
    var_types: dict[str, str]
    dv: frozenset[tuple[str, str]]
    dv_all: frozenset[tuple[str, str]]
    f_lookup: dict[str, str]                   # active var -> $f label

    @property
    def e_hyps(self) -> tuple[Hypothesis, ...]:
        return tuple(h for h in self.mand_hyps if h.kind == "e")


@dataclass
class Assertion:
    label: str
    kind: str                  # 'a' | 'p'
    expr: Expr
    frame: Frame
    index: int                 # library ordinal among assertions
    line: int
    col: int
    proof: list[str] | None = None          # normal proof labels (or ['?'...])
    compressed: tuple[tuple[str, ...], str] | None = None  # (ref labels, blob)
    decl_seq: int = 0
    scope_ids: frozenset[int] = frozenset()

    @property
    def is_provable(self) -> bool:
        return self.kind == "p"

    @property
    def typecode(self) -> str:
        return self.expr[0]

    def statement_text(self) -> str:
        """Canonical ``[[ hyps ]] tc conclusion`` form, single-spaced."""
        hyps = " ".join(" ".join(h.expr) for h in self.frame.e_hyps)
        return f"[[ {hyps} ]] {' '.join(self.expr)}" if hyps else f"[[ ]] {' '.join(self.expr)}"


class Database:
    """Immutable parsed Metamath database."""

    def __init__(self) -> None:
        self.constants: set[str] = set()
        self.variables: set[str] = set()
        self.assertions: list[Assertion] = []
        self.by_label: dict[str, Assertion] = {}
        self.hyp_by_label: dict[str, Hypothesis] = {}
        self.by_statement_text: dict[str, list[str]] = {}
        self.provable_tc: str = "|-"
        self._grammar = None
        self._term_cache: dict[tuple[str, Expr], object] = {}

    # -- symbol helpers -------------------------------------------------
    def is_var(self, tok: str) -> bool:
        return tok in self.variables

    def expr_vars(self, expr) -> set[str]:
        return {t for t in expr if t in self.variables}

    # -- lookups --------------------------------------------------------
    def theorem(self, label: str) -> Assertion:
        return self.by_label[label]

    def provables(self) -> list[Assertion]:
        return [a for a in self.assertions if a.kind == "p"]

    def lookup_statement(self, text: str, ceiling: int | None = None) -> Assertion | None:
        """Resolve a canonical statement text to the earliest matching assertion."""
        for label in self.by_statement_text.get(text, ()):
            a = self.by_label[label]
            if ceiling is None or a.index < ceiling:
                return a
        return None

    @property
    def grammar(self):
        if self._grammar is None:
            from .grammar import Grammar
            self._grammar = Grammar(self)
        return self._grammar

    # -- construction (used by the parser only) --------------------------
    def _register(self, a: Assertion) -> None:
        self.assertions.append(a)
        self.by_label[a.label] = a
        if a.typecode == self.provable_tc:
            self.by_statement_text.setdefault(a.statement_text(), []).append(a.label)


class _Scope:
    __slots__ = ("sid", "vars", "f_by_var", "e_hyps", "dv")

    def __init__(self, sid: int):
        self.sid = sid
        self.vars: set[str] = set()
        self.f_by_var: dict[str, Hypothesis] = {}
        self.e_hyps: list[Hypothesis] = []
        self.dv: set[tuple[str, str]] = set()


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def parse_database(source_text: str, provable_tc: str = "|-") -> Database:
    """Parse resolved ``.mm`` source into a :class:`Database`.

    Raises lexical/scope/duplicate-label/undeclared-symbol errors with
    line and column positions; never attempts proof verification.
    """
    db = Database()
    db.provable_tc = provable_tc
    toks = list(tokenize(source_text))
    pos = 0
    n = len(toks)
    scopes: list[_Scope] = [_Scope(0)]
    next_sid = itertools.count(1)
    decl_seq = itertools.count()
    labels_seen: set[str] = set()

    def peek():
        return toks[pos] if pos < n else (None, 0, 0)

    def take():
        nonlocal pos
        if pos >= n:
            raise ScopeError("unexpected end of file")
        t = toks[pos]
        pos += 1
        return t

    def read_until(end: str, stop_also: tuple[str, ...] = ()):
        out = []
        while True:
            tok, line, col = take()
            if tok == end:
                return out, tok
            if tok in stop_also:
                return out, tok
            if tok.startswith("$") and tok not in stop_also:
                raise ScopeError(f"unexpected keyword {tok} inside statement",
                                 line=line, col=col)
            out.append(tok)

    def check_declared(sym_toks, line, col, label):
        for t in sym_toks:
            if t not in db.constants and not _active_var(t):
                raise UndeclaredSymbolError(f"undeclared symbol {t!r}",
                                            line=line, col=col, label=label)

    def _active_var(v: str) -> bool:
        return any(v in s.vars for s in scopes)

    def _active_f(v: str) -> Hypothesis | None:
        for s in reversed(scopes):
            if v in s.f_by_var:
                return s.f_by_var[v]
        return None

    def make_frame(expr: Expr, line: int, col: int, label: str) -> Frame:
        e_hyps = [h for s in scopes for h in s.e_hyps]
        mand_vars_set = db.expr_vars(expr)
        for h in e_hyps:
            mand_vars_set |= db.expr_vars(h.expr)
        f_hyps = []
        f_lookup: dict[str, str] = {}
        for s in scopes:
            for v, h in s.f_by_var.items():
                f_lookup[v] = h.label
                if v in mand_vars_set:
                    f_hyps.append(h)
        for v in mand_vars_set:
            if _active_f(v) is None:
                raise ScopeError(f"variable {v} has no active $f hypothesis",
                                 line=line, col=col, label=label)
        hyps = tuple(sorted(f_hyps + e_hyps, key=lambda h: h.seq))
        mand_vars = tuple(h.var for h in hyps if h.kind == "f")
        var_types = {h.var: h.expr[0] for h in hyps if h.kind == "f"}
        dv_all = frozenset(p for s in scopes for p in s.dv)
        dv = frozenset(p for p in dv_all
                       if p[0] in mand_vars_set and p[1] in mand_vars_set)
        return Frame(hyps, mand_vars, var_types, dv, dv_all, f_lookup)

    def new_label(label, line, col):
        if label in labels_seen:
            raise DuplicateLabelError(f"duplicate label {label!r}", line=line, col=col)
        if label in db.constants or label in db.variables:
            raise DuplicateLabelError(
                f"label {label!r} collides with a math symbol", line=line, col=col)
        labels_seen.add(label)

    label: str | None = None
    label_pos = (0, 0)
    while pos < n:
        tok, line, col = take()
        if tok == "${":
            if label is not None:
                raise ScopeError("label before ${", line=line, col=col)
            scopes.append(_Scope(next(next_sid)))
        elif tok == "$}":
            if label is not None:
                raise ScopeError("label before $}", line=line, col=col)
            if len(scopes) == 1:
                raise ScopeError("$} without matching ${", line=line, col=col)
            scopes.pop()
        elif tok == "$c":
            if label is not None:
                raise ScopeError("label before $c", line=line, col=col)
            if len(scopes) > 1:
                raise ScopeError("$c only allowed in the outermost scope",
                                 line=line, col=col)
            syms, _ = read_until("$.")
            for s in syms:
                if s in db.constants or s in db.variables or s in labels_seen:
                    raise ScopeError(f"symbol {s!r} already declared", line=line, col=col)
                db.constants.add(s)
        elif tok == "$v":
            if label is not None:
                raise ScopeError("label before $v", line=line, col=col)
            syms, _ = read_until("$.")
            for s in syms:
                if s in db.constants:
                    raise ScopeError(f"{s!r} already a constant", line=line, col=col)
                if _active_var(s):
                    raise ScopeError(f"variable {s!r} already active", line=line, col=col)
                db.variables.add(s)
                scopes[-1].vars.add(s)
        elif tok == "$d":
            if label is not None:
                raise ScopeError("label before $d", line=line, col=col)
            syms, _ = read_until("$.")
            if len(syms) < 2:
                raise ScopeError("$d needs at least two variables", line=line, col=col)
            for s in syms:
                if not _active_var(s):
                    raise UndeclaredSymbolError(f"$d references inactive variable {s!r}",
                                                line=line, col=col)
            for a, b in itertools.combinations(syms, 2):
                if a == b:
                    raise ScopeError(f"$d repeats variable {a!r}", line=line, col=col)
                scopes[-1].dv.add(_pair(a, b))
        elif tok in ("$f", "$e", "$a", "$p"):
            if label is None:
                raise ScopeError(f"{tok} requires a label", line=line, col=col)
            new_label(label, *label_pos)
            if tok == "$f":
                syms, _ = read_until("$.")
                if len(syms) != 2:
                    raise ScopeError("$f takes exactly a typecode and a variable",
                                     line=line, col=col, label=label)
                tc, v = syms
                if tc not in db.constants:
                    raise UndeclaredSymbolError(f"typecode {tc!r} not a constant",
                                                line=line, col=col, label=label)
                if not _active_var(v):
                    raise UndeclaredSymbolError(f"{v!r} not an active variable",
                                                line=line, col=col, label=label)
                if _active_f(v) is not None:
                    raise ScopeError(f"variable {v!r} already has an active $f",
                                     line=line, col=col, label=label)
                h = Hypothesis(label, "f", (tc, v), next(decl_seq), scopes[-1].sid)
                scopes[-1].f_by_var[v] = h
                db.hyp_by_label[label] = h
            elif tok == "$e":
                syms, _ = read_until("$.")
                if not syms:
                    raise ScopeError("$e needs a typecode", line=line, col=col, label=label)
                check_declared(syms, line, col, label)
                h = Hypothesis(label, "e", tuple(syms), next(decl_seq), scopes[-1].sid)
                scopes[-1].e_hyps.append(h)
                db.hyp_by_label[label] = h
            else:
                stop = ("$=",) if tok == "$p" else ()
                syms, ended = read_until("$.", stop_also=stop)
                if not syms:
                    raise ScopeError(f"${tok[-1]} needs a typecode",
                                     line=line, col=col, label=label)
                check_declared(syms, line, col, label)
                expr = tuple(syms)
                frame = make_frame(expr, line, col, label)
                a = Assertion(label, tok[1], expr, frame,
                              index=len(db.assertions), line=line, col=col,
                              decl_seq=next(decl_seq),
                              scope_ids=frozenset(s.sid for s in scopes))
                if tok == "$p":
                    if ended != "$=":
                        raise ScopeError(f"$p statement {label!r} lacks a $= proof",
                                         line=line, col=col, label=label)
                    ptoks, _ = read_until("$.")
                    if not ptoks:
                        raise ScopeError("empty proof", line=line, col=col, label=label)
                    if ptoks[0] == "(":
                        try:
                            close = ptoks.index(")")
                        except ValueError:
                            raise ScopeError("compressed proof lacks ')'",
                                             line=line, col=col, label=label)
                        a.compressed = (tuple(ptoks[1:close]), "".join(ptoks[close + 1:]))
                    else:
                        a.proof = ptoks
                db._register(a)
            label = None
        elif tok == "$[":
            raise ScopeError("unresolved $[ $] include; run resolve_includes first",
                             line=line, col=col)
        elif tok.startswith("$"):
            raise ScopeError(f"unexpected keyword {tok}", line=line, col=col)
        else:
            if label is not None:
                raise ScopeError(f"two labels in a row: {label!r}, {tok!r}",
                                 line=line, col=col)
            label = tok
            label_pos = (line, col)
    if label is not None:
        raise ScopeError(f"dangling label {label!r} at end of input")
    if len(scopes) > 1:
        raise ScopeError("unclosed ${ at end of input")
    return db
