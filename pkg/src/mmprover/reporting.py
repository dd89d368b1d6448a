"""Delimited outputs and report figures for the evaluation paths.

Every report writer pairs a machine-readable file (CSV/JSON Lines) with
an optional rendered matplotlib figure saved next to it.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_csv(path, rows: list[dict], fields: list[str] | None = None) -> None:
    rows = list(rows)
    if fields is None:
        fields = list(rows[0].keys()) if rows else []
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fields)
        w.writeheader()
        for r in rows:
            w.writerow({k: r.get(k) for k in fields})


def write_jsonl(path, rows) -> None:
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


def plot_attempts_scaling(rates: dict[int, float], path,
                          expected=None) -> None:
    """Pass rate as the attempt budget doubles, with an optional overlay."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = sorted(rates)
    ax.plot(xs, [rates[a] for a in xs], "o-", label="measured")
    if expected is not None:
        ax.plot(xs, [expected(a) for a in xs], "--", color="gray",
                label="expected")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("attempts per statement")
    ax.set_ylabel("pass rate")
    ax.set_ylim(0, 1)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_step_distribution(samples: dict[str, list[int]], path) -> None:
    """Histogram of proof-step counts per generator configuration."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for name, counts in sorted(samples.items()):
        ax.hist(counts, bins=30, alpha=0.5, label=name)
    ax.set_xlabel("proof steps")
    ax.set_ylabel("proofs")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_pass_rates(rates: dict[str, float], path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    names = sorted(rates)
    ax.bar(range(len(names)), [rates[n] for n in names])
    ax.set_xticks(range(len(names)), names, rotation=30, ha="right")
    ax.set_ylabel("pass rate")
    ax.set_ylim(0, 1)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ensure_parent(path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    return p
