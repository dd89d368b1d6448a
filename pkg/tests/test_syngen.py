import random
import statistics

import pytest

from mmprover.kernel import export_proof, parse_database, verify_node, verify_proof
from mmprover.syngen import (
    arith_proof,
    gen_arith,
    gen_ring,
    gen_test_statements,
    sample_operands,
)
from mmprover.syngen.arith import numeral
from mmprover.syngen.ring import RING_WEIGHTS, weighted_rule


def test_numeral_rendering():
    assert numeral(0) == ("0",)
    assert numeral(7) == ("7",)
    assert numeral(35) == (";", "3", "5") and numeral(242) == (";", ";", "2", "4", "2")
    assert numeral(-17) == ("-u", ";", "1", "7")


def test_example_11_times_22(db):
    g = arith_proof(db, "mul", (11, 22))
    assert " ".join(g.expr) == "|- ( ; 1 1 x. ; 2 2 ) = ; ; 2 4 2"
    assert verify_node(db, g.root, g.expr, []) == g.proofsteps


def test_degenerate_addition(db):
    g = arith_proof(db, "add", (0, 0))
    assert " ".join(g.expr) == "|- ( 0 + 0 ) = 0"
    assert g.proofsteps == 1


@pytest.mark.parametrize("kind,ops,stmt", [
    ("add", (-374, 520), "|- ( -u ; ; 3 7 4 + ; ; 5 2 0 ) = ; ; 1 4 6"),
    ("add", (374, -520), "|- ( ; ; 3 7 4 + -u ; ; 5 2 0 ) = -u ; ; 1 4 6"),
    ("add", (-3, -4), "|- ( -u 3 + -u 4 ) = -u 7"),
    ("add", (52, 0), "|- ( ; 5 2 + 0 ) = ; 5 2"),
    ("div", (-1924, 37), "|- ( -u ; ; ; 1 9 2 4 / ; 3 7 ) = -u ; 5 2"),
    ("div", (0, 9), "|- ( 0 / 9 ) = 0"),
    ("mod", (1234, 97), "|- ( ; ; ; 1 2 3 4 mod ; 9 7 ) = ; 7 0"),
    ("mod", (5, 9), "|- ( 5 mod 9 ) = 5"),
    ("exp", (12, 0), "|- ( ; 1 2 ^ 0 ) = 1"),
    ("exp", (12, 1), "|- ( ; 1 2 ^ 1 ) = ; 1 2"),
    ("exp", (12, 3), "|- ( ; 1 2 ^ 3 ) = ; ; ; 1 7 2 8"),
])
def test_arith_instances(db, kind, ops, stmt):
    g = arith_proof(db, kind, ops)
    assert " ".join(g.expr) == stmt
    verify_node(db, g.root, g.expr, [])


def test_all_generated_proofs_verify(db):
    """CI property: no generator output is ever rejected by the kernel."""
    rng = random.Random(8)
    n = 0
    for kind in ("add", "mul", "div", "mod", "exp"):
        for _ in range(85):
            g = gen_arith(db, kind, rng.choice((1, 2, 3, 5, 9)), rng)
            verify_node(db, g.root, g.expr, [])
            n += 1
    for _ in range(75):
        g = gen_ring(db, rng.randrange(0, 7), rng.choice((1, 2, 3)), rng)
        verify_node(db, g.root, g.expr, [])
        n += 1
    assert n >= 500


def test_step_count_monotone_in_ndigits(db):
    for kind in ("add", "div", "mod", "exp"):
        means = []
        for nd in (3, 9, 18):
            counts = [gen_arith(db, kind, nd, random.Random(100 + i)).proofsteps
                      for i in range(150)]
            means.append(statistics.mean(counts))
        assert means[0] < means[1] < means[2], (kind, means)


def test_determinism_byte_for_byte(db):
    for kind in ("add", "div", "mod", "exp"):
        a = gen_arith(db, kind, 6, random.Random(77))
        b = gen_arith(db, kind, 6, random.Random(77))
        assert a.expr == b.expr
        assert export_proof(db, "t", a.expr, [], [], a.root) == \
            export_proof(db, "t", b.expr, [], [], b.root)
    r1 = gen_ring(db, 5, 2, random.Random(3))
    r2 = gen_ring(db, 5, 2, random.Random(3))
    assert r1.expr == r2.expr


def test_ring_seed_case(db):
    g = gen_ring(db, 0, 1, random.Random(0))
    assert " ".join(g.expr) == "|- ( A e. ZZ -> A = A )"
    assert g.proofsteps == 1


def test_ring_depth6_shape(db):
    g = gen_ring(db, 6, 2, random.Random(12))
    assert g.meta["achieved"] == 6
    text = " ".join(g.expr)
    assert text.startswith("|- ( ( A e. ZZ /\\ B e. ZZ ) -> ")
    assert " = " in text
    verify_node(db, g.root, g.expr, [])


def test_ring_generated_mm_reverifies(db):
    base = open("fixtures/miniset.mm").read()
    g = gen_ring(db, 6, 3, random.Random(5))
    text = export_proof(db, "ringx", g.expr, [], [], g.root)
    db2 = parse_database(base + "\n" + text)
    assert verify_proof(db2, db2.theorem("ringx")) is not None


def test_ring_sampler_distribution():
    """Chi-square of the weighted rule sampler against the weight table."""
    from scipy.stats import chisquare

    rng = random.Random(123)
    n = 10_000
    counts = {k: 0 for k in RING_WEIGHTS}
    for _ in range(n):
        counts[weighted_rule(rng)] += 1
    total_w = sum(RING_WEIGHTS.values())
    expected = [n * w / total_w for w in RING_WEIGHTS.values()]
    observed = [counts[k] for k in RING_WEIGHTS]
    stat, p = chisquare(observed, expected)
    assert p > 0.01
    for k, w in RING_WEIGHTS.items():
        exp = n * w / total_w
        sigma = (exp * (1 - w / total_w)) ** 0.5
        assert abs(counts[k] - exp) <= 3 * sigma, (k, counts[k], exp)


def test_sample_operands_ranges():
    rng = random.Random(0)
    for _ in range(300):
        x, y = sample_operands("add", 3, rng)
        assert -1000 <= x <= 1000 and -1000 <= y <= 1000
        m, n = sample_operands("div", 3, rng)
        assert n >= 1 and m % n == 0
        m, n = sample_operands("mod", 3, rng)
        assert m >= 0 and n >= 2
        b, e = sample_operands("exp", 3, rng)
        assert b >= 0 and 0 <= e <= 2


def test_gen_test_statements(db):
    stmts = gen_test_statements(db, "add", 20, random.Random(50), ndigits=3)
    assert len(stmts) == 20
    assert all(s.startswith("[[ ]] |- (") for s in stmts)
    assert gen_test_statements(db, "add", 0, random.Random(0)) == []
    # seed separation keeps train and eval draws disjoint
    train = set(gen_test_statements(db, "add", 30, random.Random(1), ndigits=3))
    evals = set(gen_test_statements(db, "add", 30, random.Random(2), ndigits=3))
    assert train != evals


def test_gen_arith_rejects_bad_ndigits(db):
    with pytest.raises(ValueError):
        gen_arith(db, "add", 0, random.Random(0))
    with pytest.raises(ValueError):
        arith_proof(db, "nope", (1, 2))
