"""Acceptance criteria, one test per criterion, each printing a verdict line.

The bundled pinned snapshot (fixtures/miniset.mm, hash recorded in
fixtures/miniset.json) stands in for the full library; assertions that
only make sense at full set.mm scale (~38k proofs / ~3m steps / ~1%
merged share) run only when MM_SETMM points at a real snapshot and are
reported as skipped otherwise.
"""

import math
import os
import random
import re
import statistics
import time

import pytest

from mmprover.kernel import parse_database, verify_node, verify_proof, export_proof
from mmprover.policy import (
    PerfectOutcomeOracle,
    ReplayOracle,
    ScoredTactic,
    StaticSuggester,
    UnificationBaseline,
    usage_counts,
)
from mmprover.proofdata import (
    extract_assertion,
    extract_proof_steps,
    split_dataset,
)
from mmprover.search import (
    SearchParams,
    SearchStatement,
    evaluate,
    run_attempts,
    run_search,
)
from mmprover.shorten import shorten
from mmprover.syngen import arith_proof, gen_arith, gen_ring
from mmprover.syngen.augmented import build_augmented
from mmprover.syngen.ring import RING_WEIGHTS, weighted_rule

SETMM = os.environ.get("MM_SETMM")


def report(n, text):
    print(f"\nACCEPTANCE {n}: PASS — {text}")


def skip(n, text):
    print(f"\nACCEPTANCE {n}: SKIP — {text}")
    pytest.skip(text)


# -- 1. kernel verifies the pinned snapshot ---------------------------------

def test_c1_pinned_snapshot(db, manifest):
    import hashlib

    src = open("fixtures/miniset.mm").read()
    assert hashlib.sha256(src.encode()).hexdigest() == manifest["sha256"], \
        "snapshot drifted from its pinned hash"
    t0 = time.monotonic()
    n_ok = 0
    for thm in db.provables():
        verify_proof(db, thm)
        n_ok += 1
    dt = time.monotonic() - t0
    # the snapshot's own count, derived independently of the parser
    tokens = re.sub(r"\$\(.*?\$\)", " ", src, flags=re.S).split()
    own_count = sum(1 for t in tokens if t == "$p")
    assert n_ok == own_count == manifest["provable"]
    assert dt < 300
    report(1, f"100% of ${'p'} statements verified ({n_ok}/{own_count}, "
              f"{dt:.1f}s), snapshot hash pinned")


def test_c1_setmm_scale():
    if not SETMM:
        skip(1, "paper-scale ≈38k sanity needs a real set.mm snapshot "
                "(set MM_SETMM); not obtainable in this environment")
    db = parse_database(open(SETMM).read())
    t0 = time.monotonic()
    for thm in db.provables():
        verify_proof(db, thm)
    dt = time.monotonic() - t0
    n = len(db.provables())
    assert 30_000 <= n <= 50_000
    assert dt < 300
    report(1, f"set.mm scale: {n} proofs verified in {dt:.0f}s")


# -- 2. extraction dataset shape ---------------------------------------------

def test_c2_record_replay(db, records):
    from mmprover.policy import apply_tactic, parse_tactic

    rng = random.Random(20240202)
    children_of = {}
    for r in records:
        for p in r.parent_hash:
            children_of.setdefault((r.proof_label, p), []).append(r)
    mismatches = 0
    sample = rng.sample(records, 1000)
    for r in sample:
        thm = db.theorem(r.proof_label)
        parsed = parse_tactic(db, r.proof_step)
        goal_expr = tuple(("|- " + r.goal.split(" ]] |- ", 1)[1]).split())
        subgoals = apply_tactic(db, parsed, goal_expr, thm.frame.dv_all)
        ctx = r.goal.split(" ]] ")[0] + " ]]"
        child_texts = [f"{ctx} {' '.join(s)}" for s in subgoals]
        hyps = {f"{ctx} {' '.join(h.expr)}" for h in thm.frame.e_hyps}
        linked = [c.goal for c in
                  children_of.get((r.proof_label, r.proof_step_hash), [])]
        if not all(g in child_texts for g in linked):
            mismatches += 1
        elif not all(g in linked or g in hyps for g in child_texts):
            mismatches += 1
    assert mismatches == 0
    # label-level splits with configured sizes are deterministic
    labels = {r.proof_label for r in records}
    s1 = split_dataset(labels, seed=11, valid_size=25, test_size=25)
    s2 = split_dataset(labels, seed=11, valid_size=25, test_size=25)
    assert s1 == s2 and len(s1.valid) == len(s1.test) == 25
    report(2, f"1000/1000 sampled records replay exactly; "
              f"{len(records)} records over {len(labels)} labels; "
              f"splits deterministic")


def test_c2_setmm_scale():
    if not SETMM:
        skip(2, "~3m records / ~38k labels / ≈90k-step splits need a real "
                "set.mm snapshot (set MM_SETMM)")
    db = parse_database(open(SETMM).read())
    records = list(extract_proof_steps(db))
    labels = {r.proof_label for r in records}
    assert 2_400_000 <= len(records) <= 3_600_000
    assert 30_400 <= len(labels) <= 45_600
    sp = split_dataset(labels, seed=0)
    per = {l: 0 for l in sp.valid + sp.test}
    for r in records:
        if r.proof_label in per:
            per[r.proof_label] += 1
    v = sum(per[l] for l in sp.valid)
    t = sum(per[l] for l in sp.test)
    assert 72_000 <= v <= 108_000 and 72_000 <= t <= 108_000
    report(2, f"set.mm scale: {len(records)} records, {len(labels)} labels")


# -- 3. generator statistics vs the reference table ---------------------------

TABLE2 = {"add": (19, 48, 94), "div": (13, 93, 292),
          "mod": (25, 82, 206), "exp": (7, 27, 68)}


def test_c3_generator_statistics(db):
    lines = []
    for kind, targets in TABLE2.items():
        for nd, tgt in zip((3, 9, 18), targets):
            counts = []
            for i in range(1000):
                g = gen_arith(db, kind, nd, random.Random(71_000 + i))
                verify_node(db, g.root, g.expr, [])
                counts.append(g.proofsteps)
            mean = statistics.mean(counts)
            assert abs(mean - tgt) <= 0.25 * tgt, (kind, nd, mean, tgt)
            lines.append(f"{kind}/{nd}: {mean:.1f} (target {tgt})")
    report(3, "1000-sample means within ±25% of the reference for every "
              "kind and ndigits; 100% of proofs verify — " + "; ".join(lines))


# -- 4. augmented dataset ------------------------------------------------------

TABLE4_STEPS = {"add": 4541, "div": 10047, "mod": 4438, "exp": 910,
                "ring2": 1373, "ring3": 1499}
TABLE4_COUNTS = {"add": 100, "div": 100, "mod": 50, "exp": 50,
                 "ring2": 50, "ring3": 50}


def test_c4_augmented_dataset(db):
    ds = build_augmented(db, seed=20240501)
    assert ds.category_counts == TABLE4_COUNTS
    for cat, target in TABLE4_STEPS.items():
        got = ds.category_steps[cat]
        assert abs(got - target) <= 0.25 * target, (cat, got, target)
    for g in ds.proofs:
        verify_node(db, g.root, g.expr, [])
    report(4, "category proof counts exact; per-category proofstep totals "
              f"within ±25%: { {k: ds.category_steps[k] for k in TABLE4_STEPS} }")


def test_c4_merged_share():
    if not SETMM:
        skip(4, "merged share ≈1% is defined against the ~3m-record set.mm "
                "extraction (set MM_SETMM); the bundled snapshot is far smaller")
    db = parse_database(open(SETMM).read())
    base = list(extract_proof_steps(db))
    ds = build_augmented(db, seed=20240501)
    _, share = ds.merged_with(base)
    assert abs(share - 0.01) <= 0.005
    report(4, f"merged share {share:.3%}")


# -- 5. ring sampler distribution ---------------------------------------------

def test_c5_ring_sampler(db):
    from scipy.stats import chisquare

    rng = random.Random(99)
    n = 10_000
    counts = {k: 0 for k in RING_WEIGHTS}
    for _ in range(n):
        counts[weighted_rule(rng)] += 1
    total_w = sum(RING_WEIGHTS.values())
    expected = [n * w / total_w for w in RING_WEIGHTS.values()]
    stat, p = chisquare([counts[k] for k in RING_WEIGHTS], expected)
    assert p > 0.01
    for k, w in RING_WEIGHTS.items():
        exp = n * w / total_w
        sigma = math.sqrt(exp * (1 - w / total_w))
        assert abs(counts[k] - exp) <= 3 * sigma
    report(5, f"10^4 draws within 3σ per theorem; chi-square p = {p:.3f}")


# -- 6. search correctness with the replay oracle -------------------------------

def test_c6_replay_search(db, records, split):
    oracle = ReplayOracle(records)
    rng = random.Random(606)
    labels = rng.sample(split.train, 100)
    base = open("fixtures/miniset.mm").read()
    blocks = []
    for i, label in enumerate(labels):
        st = SearchStatement.from_assertion(db, db.theorem(label))
        best, _ = run_attempts(
            db, st, oracle, SearchParams(attempts=1, max_expansions=800))
        assert best.proved, label
        verify_node(db, best.proof, st.expr, st.e_hyps, st.dv_all,
                    ceiling=st.ceiling)
        thm = db.theorem(label)
        blocks.append(export_proof(db, f"rp{i}", thm.expr,
                                   [h.expr for h in thm.frame.e_hyps],
                                   sorted(thm.frame.dv), best.proof))
    spliced = base + "\n" + "\n".join(blocks)
    db2 = parse_database(spliced)
    for i in range(len(labels)):
        assert verify_proof(db2, db2.theorem(f"rp{i}")) is not None
    report(6, "replay oracle proves 100/100 sampled train theorems at a=1; "
              "every proof re-verifies and its export re-verifies after splice")


# -- 7. value guidance beats cumulative logprob ---------------------------------

class NoisySuggester:
    """Recorded step at a worse logprob than two applicable decoys."""

    def __init__(self, db, by_goal):
        self.db = db
        self.by_goal = by_goal

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        out = []
        real = self.by_goal.get(goal_text)
        concl = goal_text.split(" ]] |- ", 1)[1] if " ]] |- " in goal_text else ""
        if " = " in f" {concl} ":
            parts = concl.split(" = ")
            if len(parts) == 2:
                lhs, rhs = parts
                for i, mid in enumerate(("0", "1")):
                    decoy = (f"[[ |- A = B |- B = C ]] |- A = C "
                             f"{{{{ A : {lhs} }}}} {{{{ B : {mid} }}}} "
                             f"{{{{ C : {rhs} }}}}")
                    out.append(ScoredTactic(decoy, -0.2 - 0.05 * i))
        if real is not None:
            out.append(ScoredTactic(real, -0.7))
        return out[:e]


def test_c7_value_guidance(db):
    rng = random.Random(7007)
    fixtures = []
    for i in range(50):
        g = gen_arith(db, "add", 2, random.Random(52_000 + i))
        fixtures.append(g)
    ratios = []
    expansions_l, expansions_v = [], []
    for g in fixtures:
        label = f"vg"
        from mmprover.proofdata import records_from_tree

        recs = list(records_from_tree(db, label, g.root, []))
        by_goal = {r.goal: r.proof_step for r in recs}
        policy = NoisySuggester(db, by_goal)
        scorer = PerfectOutcomeOracle({r.goal for r in recs})
        st = SearchStatement(label, g.expr)
        res_l = run_search(db, st, policy,
                           SearchParams(max_expansions=4000, priority="logprob"))
        res_v = run_search(db, st, policy,
                           SearchParams(max_expansions=4000, priority="value"),
                           scorer=scorer)
        assert res_l.proved and res_v.proved
        expansions_l.append(res_l.expansions)
        expansions_v.append(res_v.expansions)
        assert res_v.expansions <= 1.1 * res_l.expansions
    med_l = statistics.median(expansions_l)
    med_v = statistics.median(expansions_v)
    assert med_v <= med_l
    report(7, f"median expansions-to-proof: value {med_v} <= logprob {med_l}; "
              f"no fixture worse than 10%")


# -- 8. attempts scaling ---------------------------------------------------------

class CoinPolicy:
    """Per-attempt success probability p, independent across attempts."""

    def __init__(self, close_map, p):
        self.close_map = close_map
        self.p = p
        self.decided: dict = {}

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        tactic = self.close_map.get(goal_text)
        if tactic is None or rng is None:
            return []
        if rng.random() < self.p:
            return [ScoredTactic(tactic, -0.1)]
        return []


def test_c8_attempts_scaling(db):
    # 200 synthetic statements drawn from the ground fact tables
    facts = [a for a in db.assertions
             if a.kind == "a" and a.typecode == db.provable_tc
             and not a.frame.mand_vars and not a.frame.e_hyps][:200]
    assert len(facts) == 200
    p = 0.2
    rates = {}
    for a_budget in (1, 2, 4, 8):
        wins = 0
        for j, fact in enumerate(facts):
            text = fact.statement_text()
            close_map = {text: text}
            policy = CoinPolicy(close_map, p)
            st = SearchStatement("syn", fact.expr)
            params = SearchParams(attempts=a_budget, max_expansions=1,
                                  seed=88_000 + j)
            best, _ = run_attempts(db, st, policy, params)
            wins += best.proved
        rates[a_budget] = wins / len(facts)
        expected = 1 - (1 - p) ** a_budget
        assert abs(rates[a_budget] - expected) <= 0.05, \
            (a_budget, rates[a_budget], expected)
    report(8, "measured pass rates " +
              ", ".join(f"a={a}: {r:.3f} (expect {1 - 0.8 ** a:.3f})"
                        for a, r in rates.items()) +
              " all within ±5 points")


# -- 9. shorten soundness ---------------------------------------------------------

def test_c9_shorten(db):
    table = {
        "[[ ]] |- ( 2 + 2 ) = 4": [("[[ ]] |- ( 2 + 2 ) = 4", -0.1)],
        "[[ ]] |- ( 3 + 3 ) = 6": [("[[ ]] |- ( 3 + 3 ) = 6", -0.1)],
        "[[ ]] |- ( 2 + 5 ) = 7": [("[[ ]] |- ( 2 + 5 ) = 7", -0.1)],
        "[[ ]] |- ( 4 + 4 ) = 8": [("[[ ]] |- ( 4 + 4 ) = 8", -0.1)],
        "[[ ]] |- ( ta -> ta )": [
            ("[[ ]] |- ( ph -> ph ) {{ ph : ta }}", -0.1)],
        "[[ ]] |- ( th -> th )": [
            ("[[ ]] |- ( th -> th ) {{ th : th }}", -0.1)],
    }
    policy = StaticSuggester(table)
    labels = ["padadd1", "padadd2", "padadd3", "padadd4", "padidlem",
              "padthid"]
    reports = {r.label: r for r in shorten(
        db, labels, policy, SearchParams(attempts=1, max_expansions=8))}
    for label in labels[:5]:
        r = reports[label]
        assert r.accepted and r.found_steps < r.original_steps
        assert set(r.found_axioms) <= set(r.original_axioms)
    neg = reports["padthid"]
    assert neg.proved and neg.found_steps < neg.original_steps
    assert not set(neg.found_axioms) <= set(neg.original_axioms)
    assert not neg.accepted
    report(9, "5/5 padded fixtures accepted (shorter, closure subset); "
              "shorter-but-new-axiom fixture rejected")


# -- 10. worked proof fixtures ----------------------------------------------------

def test_c10_appendix_fixtures(db, records):
    oracle = ReplayOracle(records)
    for label in ("nn0onn0ex", "uznn0sub", "pm4.78"):
        thm = db.theorem(label)
        assert verify_proof(db, thm, build_tree=True) is not None
        st = SearchStatement.from_assertion(db, thm)
        res = run_search(db, st, oracle, SearchParams(max_expansions=200))
        assert res.proved, label
        verify_node(db, res.proof, st.expr, st.e_hyps, st.dv_all,
                    ceiling=st.ceiling)
    report(10, "nn0onn0ex, uznn0sub, pm4.78 verify and re-derive through "
               "run_search with the replay oracle")


# -- 11. baseline regression floor ------------------------------------------------

BASELINE_FLOOR = 0.24  # measured once with exactly this configuration


def test_c11_baseline_floor(db, split):
    base = UnificationBaseline(db, usage_counts(db, split.train))
    params = SearchParams(attempts=2, expansions=16, max_expansions=48, seed=7)
    statements = [SearchStatement.from_assertion(db, db.theorem(l))
                  for l in split.valid]
    rate, _ = evaluate(db, statements, base, params)
    assert rate > 0, "baseline must prove a strictly positive fraction"
    assert rate >= BASELINE_FLOOR
    report(11, f"unification baseline proves {rate:.2%} of the valid split "
               f"(frozen floor {BASELINE_FLOOR:.0%}); model pass rates "
               f"(29–56%, Tables 5–10) are explicitly not desk-reproducible")
