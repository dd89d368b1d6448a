"""Proof shortening: search for shorter proofs and vet them.

A found proof is accepted only if it is strictly shorter than the
recorded one (proof-level deduplicated step counts) and its axiom closure
is a subset of the original's, so a "shorter" proof can never smuggle in
new axiomatic strength.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .kernel import (
    Assertion,
    Database,
    HypLeaf,
    ProofNode,
    export_proof,
    verify_proof,
)
from .search import SearchParams, SearchStatement, run_attempts


def axiom_closure(db: Database, label: str,
                  _memo: dict | None = None) -> frozenset[str]:
    """Transitive set of provable-typecode axioms a statement depends on."""
    memo = _memo if _memo is not None else {}
    hit = memo.get(label)
    if hit is not None:
        return hit
    memo[label] = frozenset()  # cycle guard; library order precludes real cycles
    a = db.by_label[label]
    if a.kind == "a":
        out = frozenset({label}) if a.typecode == db.provable_tc else frozenset()
    else:
        root = verify_proof(db, a, build_tree=True)
        out = frozenset()
        if isinstance(root, ProofNode):
            for node in root.iter_unique():
                out |= closure_of_node(db, node, memo)
    memo[label] = out
    return out


def closure_of_node(db: Database, node: ProofNode,
                    memo: dict) -> frozenset[str]:
    cited = db.by_label[node.label]
    if cited.kind == "a":
        return frozenset({node.label}) if cited.typecode == db.provable_tc \
            else frozenset()
    return axiom_closure(db, node.label, memo)


def proof_axiom_closure(db: Database, root, memo: dict | None = None
                        ) -> frozenset[str]:
    """Axiom closure of an in-memory proof tree."""
    memo = memo if memo is not None else {}
    out = frozenset()
    if isinstance(root, HypLeaf):
        return out
    for node in root.iter_unique():
        out |= closure_of_node(db, node, memo)
    return out


@dataclass
class ShortenReport:
    label: str
    proved: bool
    original_steps: int
    found_steps: int | None
    original_axioms: list[str]
    found_axioms: list[str]
    accepted: bool
    exported: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def shorten(db: Database, labels, policy, params: SearchParams,
            scorer=None, fmt: str = "compressed") -> list[ShortenReport]:
    """Attempt to shorten each recorded proof; accept only sound wins."""
    memo: dict = {}
    reports = []
    for label in labels:
        thm = db.theorem(label)
        original_root = verify_proof(db, thm, build_tree=True)
        original_steps = original_root.step_count() \
            if isinstance(original_root, ProofNode) else 0
        original_ax = axiom_closure(db, label, memo)
        st = SearchStatement.from_assertion(db, thm, benchmark=True)
        best, _ = run_attempts(db, st, policy, params, scorer=scorer)
        if not best.proved:
            reports.append(ShortenReport(label, False, original_steps, None,
                                         sorted(original_ax), [], False))
            continue
        found_steps = best.proof.step_count() \
            if isinstance(best.proof, ProofNode) else 0
        found_ax = proof_axiom_closure(db, best.proof, memo)
        accepted = found_steps < original_steps and found_ax <= original_ax
        exported = None
        if accepted:
            exported = export_proof(db, label, thm.expr,
                                    [h.expr for h in thm.frame.e_hyps],
                                    sorted(thm.frame.dv), best.proof, fmt)
        reports.append(ShortenReport(label, True, original_steps, found_steps,
                                     sorted(original_ax), sorted(found_ax),
                                     accepted, exported))
    return reports
