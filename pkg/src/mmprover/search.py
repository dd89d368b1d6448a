"""Best-first backward proof search.

A proof search keeps a tree of goals and tactic applications plus a
priority queue of open goals. In the default mode the queue is ordered by
cumulative log-probability of the tactics leading to each goal (siblings
created by one tactic share a priority); with an outcome scorer the same
accumulation runs over the log of the sibling-product value function
instead. Every applied tactic goes through the kernel, so a finished
search yields a proof that re-verifies by construction.
"""

from __future__ import annotations

import heapq
import json
import math
import random
import time
from dataclasses import dataclass, field

from .kernel import Assertion, Database, Expr, HypLeaf, ProofNode
from .kernel.errors import DVViolationError
from .policy.tactic import TacticError, apply_tactic, parse_tactic
from .proofdata import goal_text as render_goal_text
from .proofdata import hash_goal_step

OPEN, PROVED, FAILED = "open", "proved", "failed"


@dataclass
class SearchParams:
    attempts: int = 4            # a
    expansions: int = 32         # e: tactic samples per goal expansion
    max_expansions: int = 128    # d: goal expansions per attempt
    temperature: float = 1.0     # t
    priority: str = "logprob"    # 'logprob' | 'value'
    seed: int = 0

    def __post_init__(self):
        if self.attempts < 1 or self.expansions < 1 or self.max_expansions < 1:
            raise ValueError("a, e, d must all be >= 1")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.priority not in ("logprob", "value"):
            raise ValueError("priority mode must be 'logprob' or 'value'")


@dataclass
class SearchStatement:
    """What a search proves: conclusion, hypothesis context, dv licence."""
    label: str
    expr: Expr
    e_hyps: tuple[Expr, ...] = ()
    dv_all: frozenset = frozenset()
    ceiling: int | None = None

    @classmethod
    def from_assertion(cls, db: Database, thm: Assertion,
                       benchmark: bool = True) -> "SearchStatement":
        return cls(thm.label, thm.expr,
                   tuple(h.expr for h in thm.frame.e_hyps),
                   thm.frame.dv_all,
                   thm.index if benchmark else None)

    @property
    def hyp_texts(self) -> list[str]:
        return [" ".join(h) for h in self.e_hyps]

    def goal_text(self, expr: Expr) -> str:
        return render_goal_text(self.hyp_texts, expr)


@dataclass
class TacticApplication:
    label: str
    subst: dict[str, Expr]
    logprob: float
    raw_text: str
    parent: "Goal"
    children: list["Goal"] = field(default_factory=list)
    seq: int = 0

    @property
    def dead(self) -> bool:
        return any(c.status == FAILED for c in self.children)

    @property
    def complete(self) -> bool:
        return all(c.status == PROVED for c in self.children)


@dataclass
class Goal:
    text: str
    expr: Expr
    parent_tactic: TacticApplication | None
    cumulative_logprob: float
    priority: float              # mode-dependent accumulated cost (>= 0)
    depth: int
    seq: int
    status: str = OPEN
    tactics: list[TacticApplication] = field(default_factory=list)
    expanded: bool = False

    def ancestors(self):
        g = self
        while g.parent_tactic is not None:
            g = g.parent_tactic.parent
            yield g


class ProofTree:
    """Goal/tactic tree plus the open-goal priority queue."""

    def __init__(self, statement: SearchStatement):
        self.statement = statement
        self._seq = 0
        self._heap: list[tuple[float, int, Goal]] = []
        self.goals: list[Goal] = []
        self.failed_memo: set[str] = set()
        self.root = self._new_goal(statement.expr, None, 0.0, 0.0, 0)
        self._enqueue(self.root)

    def _new_goal(self, expr, parent_tactic, cum_lp, priority, depth) -> Goal:
        g = Goal(self.statement.goal_text(expr), tuple(expr), parent_tactic,
                 cum_lp, priority, depth, self._seq)
        self._seq += 1
        self.goals.append(g)
        return g

    def _enqueue(self, g: Goal) -> None:
        heapq.heappush(self._heap, (g.priority, g.seq, g))

    def pop_open(self) -> Goal | None:
        while self._heap:
            _, _, g = heapq.heappop(self._heap)
            if g.status != OPEN or g.expanded:
                continue
            if g.text in self.failed_memo:
                self._mark_failed(g)
                continue
            return g
        return None

    @property
    def has_open(self) -> bool:
        return any(g.status == OPEN and not g.expanded for _, _, g in self._heap)

    # -- status propagation ----------------------------------------------
    def _mark_proved(self, g: Goal) -> None:
        if g.status == PROVED:
            return
        g.status = PROVED
        t = g.parent_tactic
        if t is not None and t.complete:
            self._mark_proved(t.parent)

    def _mark_failed(self, g: Goal) -> None:
        if g.status != OPEN:
            return
        g.status = FAILED
        t = g.parent_tactic
        if t is not None:
            parent = t.parent
            if parent.status == OPEN and parent.expanded and \
                    all(tt.dead for tt in parent.tactics):
                self._mark_failed(parent)

    def finish_expansion(self, g: Goal) -> None:
        g.expanded = True
        if g.status != OPEN:
            return
        live = [t for t in g.tactics if not t.dead]
        if any(t.complete for t in g.tactics):
            self._mark_proved(g)
        elif not live:
            self.failed_memo.add(g.text)
            self._mark_failed(g)

    # -- proof extraction ---------------------------------------------------
    def extract_proof(self) -> ProofNode | HypLeaf:
        hyp_set = {tuple(h) for h in self.statement.e_hyps}

        def build(g: Goal):
            if g.expr in hyp_set:
                return HypLeaf("", g.expr)
            t = next(t for t in sorted(g.tactics, key=lambda t: t.seq)
                     if t.complete)
            return ProofNode(t.label, dict(t.subst),
                             [build(c) for c in t.children], g.expr)

        if self.root.status != PROVED:
            raise ValueError("root is not proved")
        return build(self.root)


@dataclass
class SearchResult:
    proved: bool
    statement: SearchStatement
    proof: ProofNode | HypLeaf | None
    expansions: int
    counters: dict
    wall_time: float
    attempt_seed: int
    tree: ProofTree | None = None

    def summary(self) -> dict:
        # wall time stays off the persisted row: seeded runs must be
        # byte-identical
        return {"label": self.statement.label, "proved": self.proved,
                "expansions": self.expansions, "seed": self.attempt_seed,
                "counters": dict(self.counters)}


def _score_children(policy, statement, child_exprs) -> float:
    """log V for one tactic application: sum of log f_P over its subgoals."""
    total = 0.0
    for expr in child_exprs:
        p = policy.score(statement.goal_text(expr))
        p = min(max(p, 1e-9), 1.0)
        total += math.log(p)
    return total


def expand_goal(db: Database, tree: ProofTree, goal: Goal, policy,
                params: SearchParams, counters: dict, rng: random.Random,
                scorer=None, transcript: list | None = None) -> None:
    """One expansion: sample e tactics, dedupe, apply the valid ones."""
    statement = tree.statement
    suggestions = policy.suggest(goal.text, params.expansions,
                                 params.temperature, statement.ceiling,
                                 rng=rng)
    counters["sampled"] = counters.get("sampled", 0) + len(suggestions)
    seen_texts = set()
    applied = []
    for s in suggestions:
        text = s.tactic if isinstance(s.tactic, str) else str(s.tactic)
        if text in seen_texts:
            counters["duplicate"] = counters.get("duplicate", 0) + 1
            continue
        seen_texts.add(text)
        try:
            parsed = parse_tactic(db, text, statement.ceiling)
            child_exprs = apply_tactic(db, parsed, goal.expr, statement.dv_all)
        except DVViolationError:
            counters["dv_violation"] = counters.get("dv_violation", 0) + 1
            continue
        except TacticError as e:
            counters[e.reason] = counters.get(e.reason, 0) + 1
            continue
        child_texts = [statement.goal_text(c) for c in child_exprs]
        ancestor_texts = {goal.text} | {a.text for a in goal.ancestors()}
        if any(t in ancestor_texts for t in child_texts):
            counters["cycle"] = counters.get("cycle", 0) + 1
            continue
        counters["valid"] = counters.get("valid", 0) + 1
        tactic = TacticApplication(parsed.assertion.label, parsed.subst,
                                   s.logprob, text, goal, seq=tree._seq)
        goal.tactics.append(tactic)
        cum_lp = goal.cumulative_logprob + s.logprob
        if params.priority == "value":
            cost = -_score_children(scorer or policy, statement, child_exprs)
        else:
            cost = -s.logprob
        priority = goal.priority + cost
        hyp_set = {tuple(h) for h in statement.e_hyps}
        for expr in child_exprs:
            child = tree._new_goal(expr, tactic, cum_lp, priority,
                                   goal.depth + 1)
            tactic.children.append(child)
        # wire statuses only after the child list is complete, so a
        # hypothesis-closed first child cannot prematurely complete the tactic
        for child in tactic.children:
            if child.expr in hyp_set:
                child.status = PROVED
            elif child.text in tree.failed_memo:
                tree._mark_failed(child)
            else:
                tree._enqueue(child)
        if tactic.complete:
            tree._mark_proved(goal)
        applied.append(tactic)
        if transcript is not None:
            transcript.append({
                "goal": hash_goal_step(goal.text),
                "tactic": text,
                "logprob": s.logprob,
                "children": [hash_goal_step(t) for t in child_texts],
                "priority": priority,
            })
        if tree.root.status == PROVED:
            break
    tree.finish_expansion(goal)


def run_search(db: Database, statement: SearchStatement, policy,
               params: SearchParams, attempt_seed: int | None = None,
               scorer=None, transcript: list | None = None,
               stop=None) -> SearchResult:
    """One attempt: expand up to d goals or until the root is proved.

    ``stop`` is an optional zero-argument callable polled between
    expansions so long-running searches can be cancelled.
    """
    t0 = time.monotonic()
    seed = params.seed if attempt_seed is None else attempt_seed
    rng = random.Random(seed)
    tree = ProofTree(statement)
    counters: dict = {}
    expansions = 0
    hyp_set = {tuple(h) for h in statement.e_hyps}
    if tree.root.expr in hyp_set:
        tree._mark_proved(tree.root)  # degenerate: statement is its own hypothesis
    while tree.root.status != PROVED and expansions < params.max_expansions:
        if stop is not None and stop():
            break
        goal = tree.pop_open()
        if goal is None:
            break
        expand_goal(db, tree, goal, policy, params, counters, rng,
                    scorer=scorer, transcript=transcript)
        expansions += 1
    proved = tree.root.status == PROVED
    proof = tree.extract_proof() if proved else None
    return SearchResult(proved, statement, proof, expansions, counters,
                        time.monotonic() - t0, seed, tree)


def attempt_seeds(seed: int, attempts: int) -> list[int]:
    """Independent, reproducible per-attempt seeds."""
    base = random.Random(seed)
    return [base.randrange(2 ** 62) for _ in range(attempts)]


def run_attempts(db: Database, statement: SearchStatement, policy,
                 params: SearchParams, scorer=None,
                 keep_trees: bool = False):
    """Up to ``a`` fresh searches; first success wins.

    Returns (best result, list of all attempt results). Trees are dropped
    unless ``keep_trees`` (the iteration loop wants them for annotation).
    """
    results = []
    best = None
    for s in attempt_seeds(params.seed, params.attempts):
        r = run_search(db, statement, policy, params, attempt_seed=s,
                       scorer=scorer)
        if not keep_trees:
            r.tree = None if not r.proved else r.tree
        results.append(r)
        best = r
        if r.proved:
            break
    return best, results


def evaluate(db: Database, statements, policy, params: SearchParams,
             scorer=None, out_path=None, log=None):
    """Pass rate over a statement list; per-statement results persisted."""
    statements = list(statements)
    if not statements:
        raise ValueError("no statements to evaluate")
    lines = []
    proved = 0
    for st in statements:
        best, _ = run_attempts(db, st, policy, params, scorer=scorer)
        proved += bool(best.proved)
        lines.append(best.summary())
        if log:
            log(best)
    if out_path is not None:
        with open(out_path, "w") as f:
            for line in lines:
                f.write(json.dumps(line) + "\n")
    return proved / len(statements), lines
