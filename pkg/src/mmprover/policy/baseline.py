"""Non-learned suggestion baseline: one-sided conclusion matching.

Enumerates library theorems whose conclusion pattern-matches the goal
(theorem variables bind to goal subterms). Variables appearing only in
hypotheses get instantiated from a finite pool: typecode-compatible goal
subterms plus a configured constant list. Candidates are scored by the
add-one-smoothed usage frequency of the theorem in the training split,
renormalized over what was emitted.
"""

from __future__ import annotations

import math
from collections import Counter

from ..kernel import Database, ProofNode, verify_proof
from ..kernel.errors import GrammarError
from ..kernel.grammar import Term
from .tactic import format_tactic

DEFAULT_POOL_CONSTANTS = ("0", "1", "2")


def usage_counts(db: Database, labels) -> Counter:
    """How often each assertion is applied across the given proofs."""
    counts: Counter = Counter()
    for label in labels:
        thm = db.theorem(label)
        root = verify_proof(db, thm, build_tree=True)
        if not isinstance(root, ProofNode):
            continue
        for node in root.iter_unique():
            counts[node.label] += 1
    return counts


def _match(pattern: Term, target: Term, binding: dict) -> bool:
    if pattern.var is not None:
        if pattern.typecode != target.typecode:
            return False
        bound = binding.get(pattern.var)
        if bound is None:
            binding[pattern.var] = target
            return True
        return bound.tokens == target.tokens
    if pattern.label != target.label or len(pattern.children) != len(target.children):
        return False
    for p, t in zip(pattern.children, target.children):
        if not _match(p, t, binding):
            return False
    return True


class UnificationBaseline:
    """SuggesterContract over mechanical conclusion matching."""

    def __init__(self, db: Database, usage: Counter | None = None,
                 pool_constants=DEFAULT_POOL_CONSTANTS,
                 max_unbound: int = 2, max_per_theorem: int = 16,
                 body_tc: str = "wff"):
        self.db = db
        self.usage = usage or Counter()
        self.pool_constants = tuple(pool_constants)
        self.max_unbound = max_unbound
        self.max_per_theorem = max_per_theorem
        self.body_tc = body_tc
        self._patterns: list[tuple[int, str, Term]] | None = None

    def _conclusion_patterns(self):
        if self._patterns is None:
            pats = []
            g = self.db.grammar
            for a in self.db.assertions:
                if a.typecode != self.db.provable_tc:
                    continue
                try:
                    pats.append((a.index, a.label, g.parse(self.body_tc,
                                                           a.expr[1:])))
                except GrammarError:
                    continue
            self._patterns = pats
        return self._patterns

    def _pool(self, goal_term: Term, typecode: str):
        """Instantiation candidates for hypothesis-only variables."""
        out = []
        seen = set()
        for sub in goal_term.subterms():
            if sub.typecode == typecode and sub.tokens not in seen:
                seen.add(sub.tokens)
                out.append(sub)
        for c in self.pool_constants:
            try:
                t = self.db.grammar.parse(typecode, (c,))
            except GrammarError:
                continue
            if t.tokens not in seen:
                seen.add(t.tokens)
                out.append(t)
        return out

    def enumerate_candidates(self, goal_text: str, ceiling=None):
        """All (label, substitution) pairs whose conclusion equals the goal."""
        concl = goal_text.split("]] ", 1)[1].split() if "]] " in goal_text \
            else goal_text.split()
        if concl and concl[0] == self.db.provable_tc:
            concl = concl[1:]
        try:
            goal_term = self.db.grammar.parse(self.body_tc, tuple(concl))
        except GrammarError:
            return
        for index, label, pattern in self._conclusion_patterns():
            if ceiling is not None and index >= ceiling:
                continue
            binding: dict = {}
            if not _match(pattern, goal_term, binding):
                continue
            asrt = self.db.by_label[label]
            unbound = [v for v in asrt.frame.mand_vars if v not in binding]
            if len(unbound) > self.max_unbound:
                continue
            assignments = [binding]
            for v in unbound:
                tc = asrt.frame.var_types[v]
                pool = self._pool(goal_term, tc)
                assignments = [dict(b, **{v: t}) for b in assignments
                               for t in pool]
                if len(assignments) > self.max_per_theorem * 4:
                    assignments = assignments[:self.max_per_theorem * 4]
            for b in assignments[:self.max_per_theorem]:
                yield label, {v: t.tokens for v, t in b.items()}

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        from . import ScoredTactic

        cands = list(self.enumerate_candidates(goal_text, ceiling))
        if not cands:
            return []
        weights = [self.usage.get(label, 0) + 1 for label, _ in cands]
        total = sum(weights)
        scored = sorted(
            ((math.log(w / total),
              format_tactic(self.db, label, subst))
             for w, (label, subst) in zip(weights, cands)),
            key=lambda p: (-p[0], p[1]))
        return [ScoredTactic(text, lp) for lp, text in scored[:e]]
