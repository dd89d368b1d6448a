#!/usr/bin/env python3
"""Kernel throughput benchmark on a synthetically enlarged library.

Builds an N-theorem database by appending generator output to the
bundled snapshot, then times parsing, full verification, and proof-step
extraction. Gives a defensible extrapolation to a ~38k-proof library.

Usage: python3 tools/bench_verify.py [N]
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mmprover.kernel import export_proof, parse_database, verify_proof
from mmprover.proofdata import extract_proof_steps
from mmprover.syngen import gen_arith, gen_ring


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2500
    repo = Path(__file__).resolve().parent.parent
    base = (repo / "fixtures" / "miniset.mm").read_text()
    db = parse_database(base)
    rng = random.Random(1)

    t0 = time.monotonic()
    blocks = []
    kinds = ("add", "add", "div", "mod", "exp", "mul")
    for i in range(n):
        kind = kinds[i % len(kinds)]
        if i % 11 == 10:
            g = gen_ring(db, 4, 1 + i % 3, rng, f"bench{i}")
        else:
            g = gen_arith(db, kind, 2 + i % 7, rng, f"bench{i}")
        blocks.append(export_proof(db, f"bench{i}", g.expr, [], [], g.root))
    gen_dt = time.monotonic() - t0
    text = base + "\n" + "\n".join(blocks)
    print(f"generated+exported {n} proofs in {gen_dt:.1f}s "
          f"({len(text) / 1e6:.1f} MB source)")

    t0 = time.monotonic()
    big = parse_database(text)
    parse_dt = time.monotonic() - t0
    provables = big.provables()
    print(f"parsed {len(big.assertions)} statements in {parse_dt:.1f}s")

    t0 = time.monotonic()
    steps = 0
    for thm in provables:
        verify_proof(big, thm)
        steps += 1
    verify_dt = time.monotonic() - t0
    rate = len(provables) / verify_dt
    print(f"verified {len(provables)} proofs in {verify_dt:.1f}s "
          f"({rate:.0f} proofs/s); extrapolated 38k: "
          f"{38000 / rate:.0f}s")

    t0 = time.monotonic()
    n_records = sum(1 for _ in extract_proof_steps(big))
    extract_dt = time.monotonic() - t0
    print(f"extracted {n_records} proof steps in {extract_dt:.1f}s")


if __name__ == "__main__":
    main()
