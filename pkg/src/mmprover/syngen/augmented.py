"""The default augmented dataset: fixed synthetic category counts.

100 nine-digit additions and divisions, 50 modulos, 50 exponentiations,
and 50 ring equalities each at depth 6 over two and three variables; all
proofs kernel-verified, extracted to proof-step records, and merged with
a base extraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..kernel import Database
from ..proofdata import ProofStepRecord, records_from_tree
from . import GeneratedProof, gen_arith, gen_ring

CATEGORIES = (
    ("add", {"kind": "add", "ndigits": 9}, 100),
    ("div", {"kind": "div", "ndigits": 9}, 100),
    ("mod", {"kind": "mod", "ndigits": 9}, 50),
    ("exp", {"kind": "exp", "ndigits": 9}, 50),
    ("ring2", {"depth": 6, "nbvar": 2}, 50),
    ("ring3", {"depth": 6, "nbvar": 3}, 50),
)


@dataclass
class AugmentedDataset:
    proofs: list[GeneratedProof]
    records: list[ProofStepRecord]
    category_counts: dict[str, int]
    category_steps: dict[str, int]

    def merged_with(self, base_records: list[ProofStepRecord]):
        """Base extraction plus the synthetic records; share reported."""
        merged = list(base_records) + list(self.records)
        share = len(self.records) / len(merged) if merged else 0.0
        return merged, share


def build_augmented(db: Database, seed: int) -> AugmentedDataset:
    rng = random.Random(seed)
    proofs: list[GeneratedProof] = []
    records: list[ProofStepRecord] = []
    counts: dict[str, int] = {}
    steps: dict[str, int] = {}
    for name, kw, n in CATEGORIES:
        counts[name] = 0
        steps[name] = 0
        for i in range(n):
            label = f"aug{name}{i:03d}"
            if name.startswith("ring"):
                g = gen_ring(db, kw["depth"], kw["nbvar"], rng, label)
            else:
                g = gen_arith(db, kw["kind"], kw["ndigits"], rng, label)
            proofs.append(g)
            counts[name] += 1
            steps[name] += g.proofsteps
            records.extend(records_from_tree(db, label, g.root, []))
    return AugmentedDataset(proofs, records, counts, steps)
