import json
import random
from pathlib import Path

import pytest

from mmprover.loop import (
    OutcomeRecord,
    dedup_proof,
    generate_annotations,
    group_proofs,
    merge_outcome_data,
    merge_proofstep_data,
    run_iteration,
)
from mmprover.policy import ReplayOracle, ScoredTactic, StaticSuggester
from mmprover.proofdata import extract_assertion
from mmprover.search import SearchParams, SearchStatement


def _statements(db, labels):
    return [SearchStatement.from_assertion(db, db.theorem(l)) for l in labels]


def test_annotations_proved_root(db, records):
    oracle = ReplayOracle(records)
    sts = _statements(db, ["3p2e5"])
    outcomes, proofs = generate_annotations(
        db, sts, oracle, SearchParams(attempts=1, max_expansions=64))
    assert len(proofs) == 1
    by_goal = {o.goal: o for o in outcomes}
    root = by_goal["[[ ]] |- ( 3 + 2 ) = 5"]
    assert root.outcome == "P" and root.root_label == "3p2e5"
    # every goal on the extracted proof was resolved
    for node in proofs[0][1].iter_unique():
        assert by_goal["[[ ]] " + " ".join(node.expr)].outcome == "P"


def test_annotations_unproved_visits_are_negative(db):
    # a suggester that always opens the transitivity subgoals but never closes
    trans = ("[[ |- A = B |- B = C ]] |- A = C {{ A : ( 3 + 2 ) }} "
             "{{ B : ( 4 + 1 ) }} {{ C : 5 }}")
    policy = StaticSuggester({"[[ ]] |- ( 3 + 2 ) = 5": [(trans, -0.5)]})
    sts = _statements(db, ["3p2e5"])
    outcomes, proofs = generate_annotations(
        db, sts, policy, SearchParams(attempts=1, max_expansions=8))
    assert proofs == []
    assert {o.goal for o in outcomes} == {
        "[[ ]] |- ( 3 + 2 ) = 5",
        "[[ ]] |- ( 3 + 2 ) = ( 4 + 1 )",
        "[[ ]] |- ( 4 + 1 ) = 5"}
    assert all(o.outcome == "N" for o in outcomes)


class CoinFlip:
    """Proves on some attempts only, so P beats N across attempts."""

    def __init__(self, close_text):
        self.close = close_text

    def suggest(self, goal_text, e, temperature, ceiling, rng=None):
        if rng and rng.random() < 0.5:
            return [ScoredTactic(self.close, -0.1)]
        return []


def test_goal_proved_in_any_attempt_is_positive(db):
    st = SearchStatement("adhoc", tuple("|- ( 4 + 1 ) = 5".split()))
    policy = CoinFlip("[[ ]] |- ( 4 + 1 ) = 5")
    # find a seed where attempt 1 fails and a later one succeeds
    for seed in range(60):
        params = SearchParams(attempts=4, max_expansions=2, seed=seed)
        outcomes, proofs = generate_annotations(db, [st], policy, params)
        root = next(o for o in outcomes
                    if o.goal == "[[ ]] |- ( 4 + 1 ) = 5")
        from mmprover.search import attempt_seeds, run_search

        seeds = attempt_seeds(seed, 4)
        first = run_search(db, st, policy, params, attempt_seed=seeds[0])
        if proofs and not first.proved:
            assert root.outcome == "P"
            break
    else:
        pytest.fail("no seed exercised the mixed-attempt case")


def test_merge_outcome_priority():
    anns = [OutcomeRecord("g1", "N", 1, "a"), OutcomeRecord("g1", "P", 1, "b"),
            OutcomeRecord("g2", "N", 1, "c")]
    merged = merge_outcome_data([], anns)
    assert {r.goal: r.outcome for r in merged} == {"g1": "P", "g2": "N"}
    # originals enter positively and never degrade
    merged = merge_outcome_data([("g2", "orig")], anns)
    assert {r.goal: r.outcome for r in merged} == {"g1": "P", "g2": "P"}
    assert [r.goal for r in merged] == sorted(r.goal for r in merged)
    # disjoint inputs concatenate; empty annotations pass originals through
    only = merge_outcome_data([("g3", "t")], [])
    assert len(only) == 1 and only[0].outcome == "P"


def test_merge_proofsteps_idempotent(db, records):
    recs = list(extract_assertion(db, db.theorem("3p2e5")))
    proofs = group_proofs(recs)
    assert len(proofs) == 1
    st = SearchStatement.from_assertion(db, db.theorem("3p2e5"))
    from mmprover.kernel import verify_proof

    root = verify_proof(db, db.theorem("3p2e5"), build_tree=True)
    merged = merge_proofstep_data(proofs, [(st, root)], db)
    assert len(merged) == 1  # same proof: dataset unchanged
    flat = [r for p in merged for r in p]
    assert [(r.goal, r.proof_step) for r in flat] == \
        [(r.goal, r.proof_step) for r in dedup_proof(recs)]


def test_merge_keeps_distinct_proofs_of_same_label(db):
    recs = list(extract_assertion(db, db.theorem("padadd1")))
    proofs = group_proofs(recs)
    st = SearchStatement.from_assertion(db, db.theorem("padadd1"))
    # a different (shorter) proof of the same statement
    from mmprover.kernel import make_step

    short = make_step(db, "2p2e4", {}, [])
    merged = merge_proofstep_data(proofs, [(st, short)], db)
    assert len(merged) == 2


def test_within_proof_dedup(db):
    recs = list(extract_assertion(db, db.theorem("3p2e5")))
    doubled = recs + recs
    assert len(dedup_proof(doubled)) == len(dedup_proof(recs))


def test_run_iteration_manifest_reproducible(db, records, tmp_path):
    oracle = ReplayOracle(records)
    labels = ["3p2e5", "4p1e5", "padadd1"]
    sts = _statements(db, labels)
    originals = []
    for label in labels:
        for r in extract_assertion(db, db.theorem(label)):
            originals.append((r.goal, label))
    params = SearchParams(attempts=1, max_expansions=64, seed=3)
    m1 = run_iteration(db, 1, sts, oracle, params, tmp_path / "w1",
                       original_positives=originals)
    m2 = run_iteration(db, 1, sts, oracle, params, tmp_path / "w2",
                       original_positives=originals)
    assert m1["status"] == "ok"
    assert m1["outputs"] == m2["outputs"]  # byte-identical datasets
    assert all(m1["results"].values())
    out = tmp_path / "w1" / "iterations" / "1"
    assert (out / "manifest.json").exists()
    lines = (out / "objectives.txt").read_text().splitlines()
    assert any(" PROOFSTEP " in l for l in lines)
    assert any(" OUTCOME P" in l for l in lines)
    # oracle fixed point: every annotation is positive
    oc = [json.loads(l) for l in (out / "outcomes.jsonl").read_text().splitlines()]
    assert all(o["outcome"] == "P" for o in oc)


def test_run_iteration_marks_failure(db, tmp_path):
    class Exploding:
        def suggest(self, *a, **kw):
            raise RuntimeError("boom")

    sts = _statements(db, ["3p2e5"])
    with pytest.raises(RuntimeError):
        run_iteration(db, 2, sts, Exploding(), SearchParams(attempts=1),
                      tmp_path)
    manifest = json.loads(
        (tmp_path / "iterations" / "2" / "manifest.json").read_text())
    assert manifest["status"] == "failed"


def test_valid_loss_tracking_outputs(db, records, tmp_path):
    oracle = ReplayOracle(records)
    sts = _statements(db, ["3p2e5"])
    vsts = _statements(db, ["padadd1"])
    m = run_iteration(db, 1, sts, oracle,
                      SearchParams(attempts=1, max_expansions=64),
                      tmp_path, valid_statements=vsts)
    assert m["valid_loss_tracking_only"] is True
    assert "valid_outcomes.jsonl" in m["outputs"]
    # the loss-tracking file never leaks into the training outcome dataset
    train = (tmp_path / "iterations" / "1" / "outcomes.jsonl").read_text()
    valid = (tmp_path / "iterations" / "1" / "valid_outcomes.jsonl").read_text()
    assert valid.strip()
    vgoals = {json.loads(l)["goal"] for l in valid.splitlines()}
    tgoals = {json.loads(l)["goal"] for l in train.splitlines()}
    assert not (vgoals & tgoals)
