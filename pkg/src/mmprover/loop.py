"""Expert-iteration data generation.

Runs searches over training statements, annotates every goal that entered
any attempt's tree as P (reached proved status in some attempt) or N, and
merges found proofs / outcome annotations into the next iteration's
datasets with the dedup rules the training loop expects: proof steps are
deduplicated within each proof, goals deduplicated globally with P taking
priority.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .kernel import Database, verify_node
from .proofdata import (
    ProofStepRecord,
    format_outcome_objective,
    format_proofstep_objective,
    records_from_tree,
)
from .search import SearchParams, SearchStatement, run_attempts


@dataclass
class OutcomeRecord:
    goal: str
    outcome: str              # 'P' | 'N'
    iteration: int
    root_label: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "OutcomeRecord":
        d = json.loads(line)
        return cls(d["goal"], d["outcome"], d["iteration"], d["root_label"])


def generate_annotations(db: Database, statements, policy,
                         params: SearchParams, scorer=None, iteration: int = 0,
                         from_valid_split: bool = False):
    """Search each statement; annotate visited goals, collect found proofs.

    Returns (outcome records, found proofs) where each found proof is a
    (statement, root ProofNode) pair. ``from_valid_split`` marks datasets
    generated for loss tracking only; they must never be merged into
    training data.
    """
    outcomes: list[OutcomeRecord] = []
    proofs = []
    for st in statements:
        best, results = run_attempts(db, st, policy, params, scorer=scorer,
                                     keep_trees=True)
        status: dict[str, bool] = {}
        for r in results:
            if r.tree is None:
                continue
            for g in r.tree.goals:
                status[g.text] = status.get(g.text, False) or g.status == "proved"
        for text in sorted(status):
            outcomes.append(OutcomeRecord(text, "P" if status[text] else "N",
                                          iteration, st.label))
        if best.proved:
            proofs.append((st, best.proof))
    return outcomes, proofs


# -- proof-step merging -------------------------------------------------------

def dedup_proof(records: list[ProofStepRecord]) -> list[ProofStepRecord]:
    """Collapse duplicate (goal, proof_step) pairs within one proof."""
    seen: set[tuple[str, str]] = set()
    out = []
    for r in records:
        key = (r.goal, r.proof_step)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def group_proofs(records) -> list[list[ProofStepRecord]]:
    """Split a flat record stream into proofs (roots carry no parent)."""
    proofs: list[list[ProofStepRecord]] = []
    for r in records:
        if not r.parent_hash:
            proofs.append([r])
        elif proofs:
            proofs[-1].append(r)
        else:
            raise ValueError("record stream does not start with a proof root")
    return proofs


def merge_proofstep_data(existing: list[list[ProofStepRecord]],
                         found, db: Database | None = None
                         ) -> list[list[ProofStepRecord]]:
    """Union of proofs; within-proof dedup; whole-proof duplicates dropped.

    ``found`` holds (SearchStatement, ProofNode) pairs; each proof is
    re-verified through the kernel before being admitted.
    """
    merged = [dedup_proof(p) for p in existing]
    shapes = {(p[0].proof_label if p else "",
               frozenset((r.goal, r.proof_step) for r in p)) for p in merged}
    for st, root in found:
        if db is not None:
            verify_node(db, root, st.expr, st.e_hyps, st.dv_all)
        recs = dedup_proof(list(records_from_tree(
            db, st.label, root, st.hyp_texts)))
        shape = (st.label, frozenset((r.goal, r.proof_step) for r in recs))
        if shape in shapes:
            continue
        shapes.add(shape)
        merged.append(recs)
    return merged


def merge_outcome_data(original_positives, annotations) -> list[OutcomeRecord]:
    """One record per goal text; positive outcomes win conflicts."""
    table: dict[str, OutcomeRecord] = {}
    for goal, label in original_positives:
        table[goal] = OutcomeRecord(goal, "P", 0, label)
    for rec in annotations:
        cur = table.get(rec.goal)
        if cur is None or (cur.outcome == "N" and rec.outcome == "P"):
            table[rec.goal] = rec
        # an existing P never degrades
    return [table[g] for g in sorted(table)]


# -- iteration orchestration ---------------------------------------------------

def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_iteration(db: Database, k: int, statements, policy,
                  params: SearchParams, workdir, scorer=None,
                  prev_proofsteps=None, original_positives=None,
                  valid_statements=None,
                  eot: str = "<|endoftext|>") -> dict:
    """One expert-iteration round: search, annotate, merge, serialize.

    Writes ``iterations/<k>/{manifest.json, proofsteps.jsonl,
    outcomes.jsonl, objectives.txt}`` under ``workdir`` and returns the
    manifest. Training itself is external: the objective file is the
    hand-off point.
    """
    outdir = Path(workdir) / "iterations" / str(k)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest: dict = {
        "iteration": k,
        "params": asdict(params),
        "started": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "statements": [st.label for st in statements],
        "status": "failed",
    }
    try:
        outcomes, proofs = generate_annotations(
            db, statements, policy, params, scorer=scorer, iteration=k)
        manifest["results"] = {
            st.label: any(p[0].label == st.label for p in proofs)
            for st in statements}
        existing = [list(p) for p in (prev_proofsteps or [])]
        merged = merge_proofstep_data(existing, proofs, db)
        merged_outcomes = merge_outcome_data(original_positives or [], outcomes)

        ps_path = outdir / "proofsteps.jsonl"
        with open(ps_path, "w") as f:
            for proof in merged:
                for r in proof:
                    f.write(r.to_json() + "\n")
        oc_path = outdir / "outcomes.jsonl"
        with open(oc_path, "w") as f:
            for r in merged_outcomes:
                f.write(r.to_json() + "\n")
        obj_path = outdir / "objectives.txt"
        with open(obj_path, "w") as f:
            for proof in merged:
                for r in proof:
                    f.write(format_proofstep_objective(r, eot) + "\n")
            for r in merged_outcomes:
                f.write(format_outcome_objective(r.goal, r.outcome, eot) + "\n")
        outputs = [ps_path, oc_path, obj_path]
        if valid_statements:
            # loss-tracking datasets over the valid split: emitted for an
            # external trainer, never merged into the training outputs
            v_outcomes, _ = generate_annotations(
                db, valid_statements, policy, params, scorer=scorer,
                iteration=k, from_valid_split=True)
            v_path = outdir / "valid_outcomes.jsonl"
            with open(v_path, "w") as f:
                for r in sorted(v_outcomes, key=lambda r: r.goal):
                    f.write(r.to_json() + "\n")
            manifest["valid_loss_tracking_only"] = True
            outputs.append(v_path)
        manifest["outputs"] = {p.name: _sha256(p) for p in outputs}
        manifest["proofs_found"] = len(proofs)
        manifest["outcome_records"] = len(merged_outcomes)
        manifest["status"] = "ok"
    finally:
        (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2))
    return manifest
