"""Command-line interface over the kernel, datasets, search, and service.

Exit codes: 0 success, 2 usage error, 3 verification/proof failure,
4 input error, 5 configuration error.
"""

from __future__ import annotations

import json
import statistics
import sys
import time
from pathlib import Path

import click

from . import loop as loop_mod
from . import proofdata, reporting
from .config import Config, load_config
from .kernel import export_proof, parse_database, resolve_includes, verify_proof
from .kernel.errors import MMError, ProofError
from .policy import LMClient, ReplayOracle, UnificationBaseline, usage_counts
from .search import SearchParams, SearchStatement, evaluate, run_attempts
from .shorten import shorten as run_shorten
from .syngen import gen_arith, gen_ring
from .syngen.augmented import build_augmented

EXIT_VERIFY = 3
EXIT_INPUT = 4
EXIT_CONFIG = 5


def _load_db(path: str):
    p = Path(path)
    if not p.exists():
        click.echo(f"error: database {path} not found", err=True)
        sys.exit(EXIT_INPUT)
    base = p.parent

    def read_file(name: str) -> str:
        return (base / name).read_text()

    text = resolve_includes(p.read_text(), read_file)
    return parse_database(text)


def _split_labels(db, split_file, split):
    if split_file:
        sp = proofdata.DatasetSplit.from_json(Path(split_file).read_text())
        labels = getattr(sp, split)
        train = sp.train
    else:
        labels = [a.label for a in db.provables()]
        train = labels
    return labels, train


def _make_policy(db, policy, endpoint, train_labels, cfg: Config | None = None):
    cfg = cfg or Config()
    policy = policy or cfg.policy
    endpoint = endpoint or cfg.endpoint
    if policy == "replay":
        records = list(proofdata.extract_proof_steps(db, train_labels))
        return ReplayOracle(records)
    if policy == "baseline":
        return UnificationBaseline(db, usage_counts(db, train_labels),
                                   pool_constants=cfg.pool_constants)
    if policy == "lm":
        if not endpoint:
            click.echo("error: policy 'lm' requires an endpoint "
                       "(--endpoint, config file, or MMPROVER_ENDPOINT)",
                       err=True)
            sys.exit(EXIT_CONFIG)
        return LMClient(endpoint, eot=cfg.eot, retries=cfg.retries)
    click.echo(f"error: unknown policy {policy!r}", err=True)
    sys.exit(EXIT_CONFIG)


def _load_config(path):
    try:
        return load_config(path)
    except (OSError, ValueError) as e:
        click.echo(f"error: bad config: {e}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
def main():
    """Metamath kernel, proof-step datasets, and guided proof search."""


@main.command()
@click.option("--db", "db_path", required=True, help="Path to the .mm database.")
@click.option("--jsonl", "jsonl_out", default=None,
              help="Write per-theorem results to this JSON Lines file.")
def verify(db_path, jsonl_out):
    """Verify every $p statement in the database."""
    t0 = time.monotonic()
    db = _load_db(db_path)
    ok = 0
    rows = []
    for thm in db.provables():
        try:
            verify_proof(db, thm)
            ok += 1
            rows.append({"label": thm.label, "ok": True})
        except ProofError as e:
            rows.append({"label": thm.label, "ok": False, "error": str(e)})
            click.echo(f"FAIL {thm.label}: {e}", err=True)
    if jsonl_out:
        reporting.write_jsonl(jsonl_out, rows)
    total = len(db.provables())
    click.echo(f"verified {ok}/{total} provable statements "
               f"({len(db.assertions)} total) in {time.monotonic() - t0:.1f}s")
    if ok != total:
        sys.exit(EXIT_VERIFY)


@main.command()
@click.option("--db", "db_path", required=True)
@click.option("--out", "out_path", required=True, help="Records JSONL output.")
@click.option("--split-seed", type=int, default=0)
@click.option("--valid", "valid_size", type=int, default=1000)
@click.option("--test", "test_size", type=int, default=1000)
@click.option("--split-out", default=None, help="Write the split JSON here.")
@click.option("--objectives-out", default=None,
              help="Write proofstep objective sentences here.")
@click.option("--eot", default=proofdata.DEFAULT_EOT, show_default=True)
def extract(db_path, out_path, split_seed, valid_size, test_size, split_out,
            objectives_out, eot):
    """Extract the proof-step dataset and split it by proof label."""
    db = _load_db(db_path)
    records = list(proofdata.extract_proof_steps(db))
    n = proofdata.write_records(out_path, records)
    labels = {r.proof_label for r in records}
    click.echo(f"extracted {n} proof steps over {len(labels)} labels")
    if split_out:
        try:
            sp = proofdata.split_dataset(labels, split_seed, valid_size,
                                         test_size)
        except ValueError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        Path(split_out).write_text(sp.to_json())
        click.echo(f"split: {len(sp.train)} train / {len(sp.valid)} valid / "
                   f"{len(sp.test)} test (seed {split_seed})")
    if objectives_out:
        with open(objectives_out, "w") as f:
            for r in records:
                f.write(proofdata.format_proofstep_objective(r, eot) + "\n")


@main.command()
@click.option("--db", "db_path", required=True)
@click.option("--label", required=True, help="Theorem to prove.")
@click.option("--policy", default="replay", show_default=True)
@click.option("--endpoint", default=None)
@click.option("--a", "attempts", type=int, default=4, show_default=True)
@click.option("--e", "expansions", type=int, default=32, show_default=True)
@click.option("--d", "depth", type=int, default=128, show_default=True)
@click.option("--t", "temperature", type=float, default=1.0, show_default=True)
@click.option("--priority", type=click.Choice(["logprob", "value"]),
              default="logprob", show_default=True)
@click.option("--seed", type=int, default=0)
@click.option("--split-file", default=None)
@click.option("--out", "out_path", default=None, help="Export the proof here.")
@click.option("--fmt", type=click.Choice(["compressed", "normal"]),
              default="compressed", show_default=True)
@click.option("--transcript", "transcript_path", default=None,
              help="Write expansion events (JSON Lines) for exact replay.")
def search(db_path, label, policy, endpoint, attempts, expansions, depth,
           temperature, priority, seed, split_file, out_path, fmt,
           transcript_path):
    """Best-first proof search for one labeled statement."""
    from .search import run_search

    db = _load_db(db_path)
    if label not in db.by_label:
        click.echo(f"error: no theorem {label!r}", err=True)
        sys.exit(EXIT_INPUT)
    _, train = _split_labels(db, split_file, "valid")
    pol = _make_policy(db, policy, endpoint, train)
    params = SearchParams(attempts, expansions, depth, temperature, priority,
                          seed)
    st = SearchStatement.from_assertion(db, db.theorem(label))
    if transcript_path:
        from .search import attempt_seeds

        events: list = []
        best = None
        results = []
        for s_ in attempt_seeds(seed, attempts):
            r = run_search(db, st, pol, params, attempt_seed=s_,
                           scorer=pol if priority == "value" else None,
                           transcript=events)
            results.append(r)
            best = r
            if r.proved:
                break
        reporting.write_jsonl(transcript_path, events)
    else:
        best, results = run_attempts(
            db, st, pol, params,
            scorer=pol if priority == "value" else None)
    click.echo(json.dumps({"label": label, "proved": best.proved,
                           "attempts_used": len(results),
                           "expansions": best.expansions,
                           "counters": best.counters}))
    if best.proved and out_path:
        thm = db.theorem(label)
        text = export_proof(db, label, thm.expr,
                            [h.expr for h in thm.frame.e_hyps],
                            sorted(thm.frame.dv), best.proof, fmt)
        Path(out_path).write_text(text)
    if not best.proved:
        sys.exit(EXIT_VERIFY)


@main.command(name="evaluate")
@click.option("--db", "db_path", required=True)
@click.option("--split-file", default=None)
@click.option("--split", type=click.Choice(["train", "valid", "test"]),
              default="valid", show_default=True)
@click.option("--policy", default="baseline", show_default=True)
@click.option("--endpoint", default=None)
@click.option("--a", "attempts", type=int, default=4)
@click.option("--e", "expansions", type=int, default=32)
@click.option("--d", "depth", type=int, default=128)
@click.option("--t", "temperature", type=float, default=1.0)
@click.option("--priority", type=click.Choice(["logprob", "value"]),
              default="logprob")
@click.option("--seed", type=int, default=0)
@click.option("--limit", type=int, default=None)
@click.option("--out", "out_path", default="eval_results.jsonl",
              show_default=True)
@click.option("--plot", "plot_path", default=None,
              help="Render a pass-rate figure to this file.")
def evaluate_cmd(db_path, split_file, split, policy, endpoint, attempts,
                 expansions, depth, temperature, priority, seed, limit,
                 out_path, plot_path):
    """Prove a split's statements; report the pass rate."""
    db = _load_db(db_path)
    labels, train = _split_labels(db, split_file, split)
    if limit:
        labels = labels[:limit]
    if not labels:
        click.echo("error: empty statement list", err=True)
        sys.exit(EXIT_INPUT)
    pol = _make_policy(db, policy, endpoint, train)
    params = SearchParams(attempts, expansions, depth, temperature, priority,
                          seed)
    statements = [SearchStatement.from_assertion(db, db.theorem(l))
                  for l in labels]
    rate, lines = evaluate(db, statements, pol, params,
                           scorer=pol if priority == "value" else None,
                           out_path=out_path)
    click.echo(json.dumps({"perf": rate, "a": attempts, "e": expansions,
                           "d": depth, "n": len(labels), "split": split,
                           "policy": policy}))
    if plot_path:
        reporting.plot_pass_rates({f"{policy}/{split}": rate}, plot_path)


def _gen_common(db, proofs, out_path, stats_csv, plot_path, verify_all=True):
    from .kernel import verify_node

    texts = []
    counts = {}
    for g in proofs:
        verify_node(db, g.root, g.expr, [])
        texts.append(export_proof(db, g.label, g.expr, [], [], g.root))
        counts.setdefault(g.kind, []).append(g.proofsteps)
    if out_path:
        Path(out_path).write_text("\n".join(texts))
    if stats_csv:
        rows = [{"kind": k, "n": len(v), "mean_steps": statistics.mean(v),
                 "min": min(v), "max": max(v)} for k, v in counts.items()]
        reporting.write_csv(stats_csv, rows)
    if plot_path:
        reporting.plot_step_distribution(counts, plot_path)


@main.command(name="gen-arith")
@click.option("--db", "db_path", required=True)
@click.option("--kind", type=click.Choice(["add", "mul", "div", "mod", "exp"]),
              required=True)
@click.option("--ndigits", type=int, required=True)
@click.option("--n", "count", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_path", default=None, help=".mm proof block output.")
@click.option("--stats-csv", default=None)
@click.option("--plot", "plot_path", default=None)
def gen_arith_cmd(db_path, kind, ndigits, count, seed, out_path, stats_csv,
                  plot_path):
    """Generate verified n-digit arithmetic proofs."""
    import random as _random

    db = _load_db(db_path)
    rng = _random.Random(seed)
    proofs = [gen_arith(db, kind, ndigits, rng, f"gen{kind}{i:04d}")
              for i in range(count)]
    _gen_common(db, proofs, out_path, stats_csv, plot_path)
    steps = [g.proofsteps for g in proofs]
    click.echo(json.dumps({"kind": kind, "ndigits": ndigits, "n": count,
                           "mean_steps": statistics.mean(steps)}))


@main.command(name="gen-ring")
@click.option("--db", "db_path", required=True)
@click.option("--depth", type=int, default=6, show_default=True)
@click.option("--nbvar", type=int, default=2, show_default=True)
@click.option("--n", "count", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_path", default=None)
@click.option("--stats-csv", default=None)
@click.option("--plot", "plot_path", default=None)
def gen_ring_cmd(db_path, depth, nbvar, count, seed, out_path, stats_csv,
                 plot_path):
    """Generate verified ring-algebra equality proofs."""
    import random as _random

    db = _load_db(db_path)
    rng = _random.Random(seed)
    proofs = [gen_ring(db, depth, nbvar, rng, f"genring{i:04d}")
              for i in range(count)]
    _gen_common(db, proofs, out_path, stats_csv, plot_path)
    steps = [g.proofsteps for g in proofs]
    click.echo(json.dumps({"depth": depth, "nbvar": nbvar, "n": count,
                           "mean_steps": statistics.mean(steps)}))


@main.command(name="gen-augmented")
@click.option("--db", "db_path", required=True)
@click.option("--seed", type=int, default=0)
@click.option("--outdir", default="augmented", show_default=True)
@click.option("--base-records", default=None,
              help="Base extraction JSONL for the merged-share figure.")
def gen_augmented_cmd(db_path, seed, outdir, base_records):
    """Build the fixed-category augmented dataset."""
    db = _load_db(db_path)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    ds = build_augmented(db, seed)
    (out / "proofs.mm").write_text("\n".join(
        export_proof(db, g.label, g.expr, [], [], g.root) for g in ds.proofs))
    proofdata.write_records(out / "records.jsonl", ds.records)
    stats = {"categories": ds.category_counts, "steps": ds.category_steps,
             "seed": seed}
    if base_records:
        base = list(proofdata.read_records(base_records))
        merged, share = ds.merged_with(base)
        proofdata.write_records(out / "merged.jsonl", merged)
        stats["merged_share"] = share
    (out / "stats.json").write_text(json.dumps(stats, indent=2))
    click.echo(json.dumps(stats))


@main.command()
@click.option("--db", "db_path", required=True)
@click.option("--k", "iteration", type=int, default=1, show_default=True)
@click.option("--policy", default="baseline", show_default=True)
@click.option("--endpoint", default=None)
@click.option("--train-split", "split_file", default=None)
@click.option("--limit", type=int, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--a", "attempts", type=int, default=1)
@click.option("--e", "expansions", type=int, default=16)
@click.option("--d", "depth", type=int, default=64)
@click.option("--workdir", default=".", show_default=True)
@click.option("--prev-proofsteps", default=None,
              help="Previous iteration's proofsteps.jsonl to merge onto.")
def iterate(db_path, iteration, policy, endpoint, split_file, limit, seed,
            attempts, expansions, depth, workdir, prev_proofsteps):
    """One expert-iteration round over training statements."""
    db = _load_db(db_path)
    labels, train = _split_labels(db, split_file, "train")
    labels = train[:limit] if limit else train
    pol = _make_policy(db, policy, endpoint, train)
    statements = [SearchStatement.from_assertion(db, db.theorem(l))
                  for l in labels]
    originals = []
    for label in labels:
        for r in proofdata.extract_assertion(db, db.theorem(label)):
            originals.append((r.goal, label))
    prev = None
    if prev_proofsteps:
        prev = loop_mod.group_proofs(proofdata.read_records(prev_proofsteps))
    params = SearchParams(attempts, expansions, depth, seed=seed)
    manifest = loop_mod.run_iteration(db, iteration, statements, pol, params,
                                      workdir, original_positives=originals,
                                      prev_proofsteps=prev)
    click.echo(json.dumps({k: manifest[k] for k in
                           ("iteration", "status", "proofs_found",
                            "outcome_records")}))
    if manifest["status"] != "ok":
        sys.exit(EXIT_VERIFY)


@main.command(name="shorten")
@click.option("--db", "db_path", required=True)
@click.option("--labels", default=None, help="Comma-separated theorem labels.")
@click.option("--labels-file", default=None)
@click.option("--policy", default="replay", show_default=True)
@click.option("--endpoint", default=None)
@click.option("--a", "attempts", type=int, default=4)
@click.option("--e", "expansions", type=int, default=32)
@click.option("--d", "depth", type=int, default=128)
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_path", default="shorten_report.jsonl",
              show_default=True)
def shorten_cmd(db_path, labels, labels_file, policy, endpoint, attempts,
                expansions, depth, seed, out_path):
    """Search for shorter proofs; accept only sound improvements."""
    db = _load_db(db_path)
    if labels:
        targets = [l.strip() for l in labels.split(",") if l.strip()]
    elif labels_file:
        targets = Path(labels_file).read_text().split()
    else:
        click.echo("error: need --labels or --labels-file", err=True)
        sys.exit(EXIT_CONFIG)
    missing = [l for l in targets if l not in db.by_label]
    if missing:
        click.echo(f"error: unknown labels {missing}", err=True)
        sys.exit(EXIT_INPUT)
    pol = _make_policy(db, policy, endpoint,
                       [a.label for a in db.provables()])
    params = SearchParams(attempts, expansions, depth, seed=seed)
    reports = run_shorten(db, targets, pol, params)
    with open(out_path, "w") as f:
        for r in reports:
            f.write(r.to_json() + "\n")
    accepted = sum(r.accepted for r in reports)
    click.echo(json.dumps({"labels": len(targets), "accepted": accepted}))


@main.command()
@click.option("--db", "db_path", default=None,
              help="Database path (or config/MMPROVER_DATABASE).")
@click.option("--config", "config_path", default=None,
              help="JSON config file; flags override its values.")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--policy", default=None)
@click.option("--endpoint", default=None)
@click.option("--session-ttl", type=float, default=None)
@click.option("--max-sessions", type=int, default=None)
def serve(db_path, config_path, host, port, policy, endpoint, session_ttl,
          max_sessions):
    """Run the interactive proving session service."""
    import uvicorn

    from .service import create_app

    cfg = _load_config(config_path)
    db_path = db_path or cfg.database
    if not db_path:
        click.echo("error: no database (use --db, a config file, or "
                   "MMPROVER_DATABASE)", err=True)
        sys.exit(EXIT_CONFIG)
    db = _load_db(db_path)
    pol = _make_policy(db, policy, endpoint,
                       [a.label for a in db.provables()], cfg)
    app = create_app(db, pol,
                     session_ttl=session_ttl or cfg.session_ttl,
                     max_sessions=max_sessions or cfg.max_sessions)
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port,
                log_level="warning")


if __name__ == "__main__":
    main()
