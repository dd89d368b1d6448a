"""Tactic suggestion and goal scoring backends.

A suggester implements ``suggest(goal_text, e, temperature, ceiling,
rng=None) -> list[ScoredTactic]`` (at most e entries, logprobs <= 0); a
scorer implements ``score(goal_text) -> float`` in [0, 1]. Backends must
tolerate concurrent calls; the deterministic ones simply ignore ``rng``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tactic import (
    CeilingError,
    ConclusionMismatchError,
    ParsedTactic,
    SubstitutionError,
    TacticError,
    TacticSyntaxError,
    UnknownStatementError,
    apply_tactic,
    format_tactic,
    parse_tactic,
)


@dataclass(frozen=True)
class ScoredTactic:
    tactic: str
    logprob: float

    def __post_init__(self):
        if not (self.logprob <= 0):
            raise ValueError("tactic logprob must be finite and <= 0")


class ReplayOracle:
    """Suggests the recorded proof step for goals it has seen.

    Built from extracted proof-step records; a test double that makes
    searches deterministic and complete on training data.
    """

    def __init__(self, records):
        self.by_goal: dict[str, list[str]] = {}
        for r in records:
            steps = self.by_goal.setdefault(r.goal, [])
            if r.proof_step not in steps:
                steps.append(r.proof_step)

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        steps = self.by_goal.get(goal_text, ())
        out = []
        for i, s in enumerate(steps[:e]):
            out.append(ScoredTactic(s, 0.0 if i == 0 else -float(i)))
        return out


class PerfectOutcomeOracle:
    """Scores 1.0 for goals on a known proof path, epsilon otherwise."""

    def __init__(self, on_path_texts, epsilon: float = 1e-3):
        self.on_path = set(on_path_texts)
        self.epsilon = epsilon

    def score(self, goal_text: str) -> float:
        return 1.0 if goal_text in self.on_path else self.epsilon


class StaticSuggester:
    """Fixed goal-text -> tactic-list map; handy in tests and fixtures."""

    def __init__(self, table: dict[str, list[tuple[str, float]]]):
        self.table = table

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        return [ScoredTactic(t, lp) for t, lp in self.table.get(goal_text, [])][:e]


from .baseline import UnificationBaseline, usage_counts  # noqa: E402
from .lm import LMClient  # noqa: E402

__all__ = [
    "ScoredTactic", "ReplayOracle", "PerfectOutcomeOracle", "StaticSuggester",
    "UnificationBaseline", "usage_counts", "LMClient",
    "parse_tactic", "apply_tactic", "format_tactic", "ParsedTactic",
    "TacticError", "TacticSyntaxError", "UnknownStatementError",
    "SubstitutionError", "ConclusionMismatchError", "CeilingError",
]
