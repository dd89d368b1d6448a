"""Proof-step dataset extraction, serialization, and splits.

Every application of a provable assertion inside a verified proof becomes
one JSON record carrying the goal, the applied tactic, a short hash, and
the parent link that encodes the proof tree. Records serialize to JSON
Lines files and to the plain-text training sentences consumed by
suggestion models.
"""

from __future__ import annotations

import base64
import hashlib
import json
import random
from dataclasses import asdict, dataclass, field

from .kernel import Assertion, Database, HypLeaf, ProofNode, verify_proof
from .policy.tactic import format_tactic

DEFAULT_EOT = "<|endoftext|>"


def hash_goal_step(text: str) -> str:
    """First 8 bytes of SHA-256, standard base64: a stable 12-char id."""
    digest = hashlib.sha256(text.encode("utf-8")).digest()[:8]
    return base64.b64encode(digest).decode("ascii")


@dataclass
class ProofStepRecord:
    proof_label: str
    goal: str
    proof_step: str
    proof_step_hash: str
    parent_hash: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "ProofStepRecord":
        d = json.loads(line)
        return cls(d["proof_label"], d["goal"], d["proof_step"],
                   d["proof_step_hash"], list(d["parent_hash"]))


def goal_text(context_hyps: list[str], expr) -> str:
    hyps = " ".join(context_hyps)
    body = " ".join(expr)
    return f"[[ {hyps} ]] {body}" if hyps else f"[[ ]] {body}"


def records_from_tree(db: Database, proof_label: str, root,
                      context_hyps: list[str]):
    """Emit one record per proof-step occurrence, parents before children.

    Shared sub-proof nodes are walked once per distinct parent; a
    (hash, parent) pair is never emitted twice, so the output stays a
    well-formed forest encoding even over DAG-shaped proofs.
    """
    if not isinstance(root, ProofNode):
        return
    seen: set[tuple[str, str]] = set()
    node_hash: dict[int, str] = {}

    def rec(node: ProofNode, parent: str | None):
        h = node_hash.get(id(node))
        if h is None:
            goal = goal_text(context_hyps, node.expr)
            step = format_tactic(db, node.label, node.subst)
            h = hash_goal_step(goal + "\n" + step)
            node_hash[id(node)] = h
        else:
            goal = step = None
        key = (h, parent or "")
        if key in seen:
            return
        seen.add(key)
        if goal is None:
            goal = goal_text(context_hyps, node.expr)
            step = format_tactic(db, node.label, node.subst)
        yield ProofStepRecord(proof_label, goal, step, h,
                              [parent] if parent else [])
        for child in node.children:
            if isinstance(child, ProofNode):
                yield from rec(child, h)

    yield from rec(root, None)


def extract_assertion(db: Database, thm: Assertion):
    """Records for one library theorem (verifies its proof on the way)."""
    root = verify_proof(db, thm, build_tree=True)
    hyps = [" ".join(h.expr) for h in thm.frame.e_hyps]
    yield from records_from_tree(db, thm.label, root, hyps)


def extract_proof_steps(db: Database, labels=None):
    """Stream records for every provable statement (or the given labels)."""
    targets = ([db.theorem(l) for l in labels] if labels is not None
               else db.provables())
    for thm in targets:
        yield from extract_assertion(db, thm)


# -- objective strings ------------------------------------------------------

def format_proofstep_objective(r: ProofStepRecord, eot: str = DEFAULT_EOT) -> str:
    return f"GOAL {r.goal} PROOFSTEP {r.proof_step}{eot}"


def format_outcome_objective(goal: str, outcome: str,
                             eot: str = DEFAULT_EOT) -> str:
    if outcome not in ("P", "N"):
        raise ValueError("outcome must be 'P' or 'N'")
    return f"GOAL {goal} OUTCOME {outcome}{eot}"


def parse_objective(text: str, eot: str = DEFAULT_EOT):
    """Invert the objective serialization; returns (kind, fields)."""
    if text.endswith(eot):
        text = text[:-len(eot)]
    if not text.startswith("GOAL "):
        raise ValueError("objective must start with 'GOAL '")
    body = text[len("GOAL "):]
    if " PROOFSTEP " in body:
        goal, step = body.split(" PROOFSTEP ", 1)
        return ("proofstep", goal, step)
    if " OUTCOME " in body:
        goal, outcome = body.rsplit(" OUTCOME ", 1)
        return ("outcome", goal, outcome)
    raise ValueError("objective has neither PROOFSTEP nor OUTCOME")


# -- splits -----------------------------------------------------------------

@dataclass
class DatasetSplit:
    train: list[str]
    valid: list[str]
    test: list[str]
    seed: int

    def to_json(self) -> str:
        return json.dumps({"seed": self.seed, "train": self.train,
                           "valid": self.valid, "test": self.test})

    @classmethod
    def from_json(cls, text: str) -> "DatasetSplit":
        d = json.loads(text)
        return cls(d["train"], d["valid"], d["test"], d["seed"])


def split_dataset(labels, seed: int, valid_size: int = 1000,
                  test_size: int = 1000) -> DatasetSplit:
    """Label-level split: proofs never straddle split boundaries."""
    pool = sorted(set(labels))
    if len(pool) < valid_size + test_size + 1:
        raise ValueError(
            f"{len(pool)} labels cannot fill valid={valid_size} + "
            f"test={test_size} splits")
    rng = random.Random(seed)
    rng.shuffle(pool)
    valid = sorted(pool[:valid_size])
    test = sorted(pool[valid_size:valid_size + test_size])
    train = sorted(pool[valid_size + test_size:])
    return DatasetSplit(train, valid, test, seed)


# -- files ------------------------------------------------------------------

def write_records(path, records) -> int:
    n = 0
    with open(path, "w") as f:
        for r in records:
            f.write(r.to_json() + "\n")
            n += 1
    return n


def read_records(path):
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line:
                yield ProofStepRecord.from_json(line)
