"""Term grammar derived from a database's syntax axioms.

Each ``$a`` whose typecode is not the provable typecode is a production:
its conclusion tokens form the right-hand side, with variables acting as
typed nonterminal slots (set.mm's ``cv`` setvar-to-class coercion is just
another production). Parsing is chart-based (Earley) so any CFG the
database defines is accepted; ambiguity is detected and reported loudly,
never resolved by precedence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .database import Database, Expr
from .errors import AmbiguousParseError, NoParseError, TypecodeMismatchError


@dataclass(frozen=True)
class Term:
    """A parse tree: variable leaf or syntax-axiom application."""
    typecode: str
    label: str | None              # syntax axiom; None at a variable leaf
    var: str | None
    children: tuple["Term", ...]
    tokens: Expr                   # rendered token string (no typecode)

    def render(self) -> str:
        return " ".join(self.tokens)

    def variables(self) -> set[str]:
        if self.var is not None:
            return {self.var}
        out: set[str] = set()
        for c in self.children:
            out |= c.variables()
        return out

    def subterms(self):
        """Yield every subterm, preorder, self included."""
        yield self
        for c in self.children:
            yield from c.subterms()


@dataclass(frozen=True)
class _Prod:
    label: str
    lhs: str
    rhs: tuple[tuple[str, str], ...]   # ('c', token) | ('n', typecode)


class Grammar:
    def __init__(self, db: Database):
        self.db = db
        self.var_type: dict[str, str] = {}
        for h in db.hyp_by_label.values():
            if h.kind == "f":
                self.var_type.setdefault(h.var, h.expr[0])
        self.prods: dict[str, list[_Prod]] = {}
        for a in db.assertions:
            if a.kind != "a" or a.typecode == db.provable_tc or a.frame.e_hyps:
                continue
            rhs = []
            for tok in a.expr[1:]:
                if db.is_var(tok):
                    rhs.append(("n", a.frame.var_types[tok]))
                else:
                    rhs.append(("c", tok))
            if not rhs:
                continue  # an empty production would make the grammar nullable
            self.prods.setdefault(a.typecode, []).append(
                _Prod(a.label, a.typecode, tuple(rhs)))
        self._cache: dict[tuple[str, Expr], Term] = {}

    def parse(self, typecode: str, tokens) -> Term:
        """Parse ``tokens`` at ``typecode``: the unique tree, or a loud error."""
        tokens = tuple(tokens)
        key = (typecode, tokens)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if len(tokens) == 1 and self.var_type.get(tokens[0]) == typecode:
            term = Term(typecode, None, tokens[0], (), tokens)
            self._cache[key] = term
            return term
        trees = self._parse_all(typecode, tokens, limit=2)
        if not trees:
            raise NoParseError(f"cannot parse {' '.join(tokens)!r} as {typecode}")
        if len(trees) > 1:
            raise AmbiguousParseError(
                f"grammar ambiguity: {' '.join(tokens)!r} has multiple "
                f"{typecode} parses")
        self._cache[key] = trees[0]
        return trees[0]

    # -- Earley chart ------------------------------------------------------
    def _parse_all(self, typecode: str, tokens: Expr, limit: int) -> list[Term]:
        completed = self._earley(typecode, tokens)
        out: list[Term] = []
        self._build(typecode, 0, len(tokens), tokens, completed, out, limit)
        return out

    def _earley(self, typecode: str, tokens: Expr):
        db = self.db
        n = len(tokens)
        chart: list[dict] = [dict() for _ in range(n + 1)]
        # completed[(typecode, start)] -> {(production | var token, end): None}
        completed: dict[tuple[str, int], dict] = {}

        def add(i, state) -> bool:
            if state in chart[i]:
                return False
            chart[i][state] = None
            return True

        for p in self.prods.get(typecode, ()):
            add(0, (p, 0, 0))
        for i in range(n + 1):
            queue = list(chart[i].keys())
            qi = 0
            while qi < len(queue):
                state = queue[qi]
                qi += 1
                prod, dot, origin = state
                if dot == len(prod.rhs):
                    completed.setdefault((prod.lhs, origin), {})[(prod, i)] = None
                    for p2, d2, o2 in list(chart[origin].keys()):
                        if d2 < len(p2.rhs) and p2.rhs[d2] == ("n", prod.lhs):
                            if add(i, (p2, d2 + 1, o2)):
                                queue.append((p2, d2 + 1, o2))
                    continue
                kind, sym = prod.rhs[dot]
                if kind == "c":
                    if i < n and tokens[i] == sym:
                        add(i + 1, (prod, dot + 1, origin))
                else:
                    if i < n and self.var_type.get(tokens[i]) == sym:
                        completed.setdefault((sym, i), {})[(tokens[i], i + 1)] = None
                        add(i + 1, (prod, dot + 1, origin))
                    for p3 in self.prods.get(sym, ()):
                        if add(i, (p3, 0, i)):
                            queue.append((p3, 0, i))
        return completed

    def _build(self, tc: str, i: int, j: int, tokens, completed, out, limit):
        for cand, end in completed.get((tc, i), {}):
            if end != j:
                continue
            if isinstance(cand, str):
                out.append(Term(tc, None, cand, (), (cand,)))
            else:
                for kids in self._splits(cand, 0, i, j, tokens, completed, limit):
                    out.append(Term(tc, cand.label, None, tuple(kids),
                                    tuple(tokens[i:j])))
                    if len(out) >= limit:
                        return
            if len(out) >= limit:
                return

    def _splits(self, prod: _Prod, k: int, i: int, j: int, tokens, completed, limit):
        if k == len(prod.rhs):
            if i == j:
                yield []
            return
        kind, sym = prod.rhs[k]
        if kind == "c":
            if i < j and tokens[i] == sym:
                yield from self._splits(prod, k + 1, i + 1, j, tokens, completed, limit)
            return
        emitted = 0
        for cand, end in completed.get((sym, i), {}):
            if end > j:
                continue
            subtrees: list[Term] = []
            if isinstance(cand, str):
                subtrees.append(Term(sym, None, cand, (), (cand,)))
            else:
                self._build(sym, i, end, tokens, completed, subtrees, limit)
            for st in subtrees:
                for rest in self._splits(prod, k + 1, end, j, tokens, completed, limit):
                    yield [st] + rest
                    emitted += 1
                    if emitted >= 64:
                        return


def apply_substitution(db: Database, term: Term, mapping: dict[str, Term]) -> Term:
    """Simultaneous tree substitution; unmapped variables stay intact.

    Plain tree replacement (Metamath has no binding to capture). Mapping a
    variable to a term of another typecode raises; ground terms come back
    unchanged.
    """
    grammar = db.grammar
    for v, t in mapping.items():
        vt = grammar.var_type.get(v)
        if vt is not None and t.typecode != vt:
            raise TypecodeMismatchError(
                f"variable {v} has typecode {vt}, term is {t.typecode}")

    def walk(t: Term) -> Term:
        if t.var is not None:
            return mapping.get(t.var, t)
        kids = tuple(walk(c) for c in t.children)
        if kids == t.children:
            return t
        return Term(t.typecode, t.label, None, kids, _render(db, t.label, kids))

    return walk(term)


def _render(db: Database, label: str, kids: tuple[Term, ...]) -> Expr:
    """Rebuild a node's tokens from its syntax axiom and new children."""
    asrt = db.by_label[label]
    out: list[str] = []
    ki = iter(kids)
    for tok in asrt.expr[1:]:
        if db.is_var(tok):
            out.extend(next(ki).tokens)
        else:
            out.append(tok)
    return tuple(out)
