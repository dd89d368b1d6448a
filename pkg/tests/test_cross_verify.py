"""Re-verification through the independent single-pass verifier.

Exported proofs must be accepted not just by the kernel that produced
them but by a second implementation sharing no code with it.
"""

import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
MINI = REPO / "tools" / "mini_verify.py"


def _mini_verify(path) -> str:
    out = subprocess.run([sys.executable, str(MINI), str(path)],
                         capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_bundle_cross_verifies():
    assert _mini_verify(REPO / "fixtures" / "miniset.mm") == \
        "mini-verify: 181 $p statements verified"


def test_exports_cross_verify(db, records, tmp_path):
    from mmprover.kernel import export_proof
    from mmprover.policy import ReplayOracle
    from mmprover.search import SearchParams, SearchStatement, run_search
    from mmprover.syngen import gen_arith, gen_ring
    import random

    base = (REPO / "fixtures" / "miniset.mm").read_text()
    blocks = []
    # search-found proofs, both output formats
    oracle = ReplayOracle(records)
    for i, label in enumerate(("3p2e5", "pm4.78", "uznn0sub", "nn0onn0ex")):
        thm = db.theorem(label)
        st = SearchStatement.from_assertion(db, thm)
        res = run_search(db, st, oracle, SearchParams(max_expansions=400))
        assert res.proved
        fmt = "compressed" if i % 2 else "normal"
        blocks.append(export_proof(db, f"cx{i}", thm.expr,
                                   [h.expr for h in thm.frame.e_hyps],
                                   sorted(thm.frame.dv), res.proof, fmt))
    # generator output
    rng = random.Random(31)
    for i in range(6):
        g = gen_arith(db, "div", 5, rng, f"cg{i}")
        blocks.append(export_proof(db, f"cg{i}", g.expr, [], [], g.root))
    g = gen_ring(db, 5, 3, rng, "cr0")
    blocks.append(export_proof(db, "cr0", g.expr, [], [], g.root))

    spliced = tmp_path / "spliced.mm"
    spliced.write_text(base + "\n" + "\n".join(blocks))
    assert _mini_verify(spliced) == \
        "mini-verify: 192 $p statements verified"
