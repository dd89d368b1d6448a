"""Synthetic proof generation: n-digit arithmetic and ring equalities."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..kernel import Database, Expr, ProofNode, verify_node
from .arith import ArithProver, num_str, numeral
from .ring import RING_WEIGHTS, build_ring_proof, render, weighted_rule

ARITH_KINDS = ("add", "mul", "div", "mod", "exp")


@dataclass
class GeneratedProof:
    """A synthesized theorem plus its machine-built, kernel-checked proof."""
    label: str
    kind: str
    expr: Expr                  # full |- statement
    root: ProofNode
    proofsteps: int             # unique proof steps (proof-level dedup)
    meta: dict = field(default_factory=dict)

    @property
    def statement_text(self) -> str:
        return "[[ ]] " + " ".join(self.expr)


def _finish(db: Database, label: str, kind: str, root: ProofNode,
            meta: dict) -> GeneratedProof:
    verify_node(db, root, root.expr, [])
    return GeneratedProof(label, kind, root.expr, root, root.step_count(), meta)


def arith_proof(db: Database, kind: str, operands: tuple,
                label: str = "") -> GeneratedProof:
    """Build the proof for explicit operands (see sample_operands)."""
    p = ArithProver(db)
    if kind == "add":
        x, y = operands
        root = p.addz(x, y)
    elif kind == "mul":
        x, y = operands
        root = p.mul(x, y)
    elif kind == "div":
        m, n = operands
        root = p.div(m, n)
    elif kind == "mod":
        m, n = operands
        root = p.mod(m, n)
    elif kind == "exp":
        b, e = operands
        root = p.exp(b, e)
    else:
        raise ValueError(f"unknown arithmetic kind {kind!r}")
    return _finish(db, label, kind, root, {"operands": operands})


def sample_operands(kind: str, ndigits: int, rng: random.Random) -> tuple:
    """Draw task operands; ranges per kind (divisor/base constraints apply)."""
    hi = 10 ** ndigits
    if kind == "add":
        return (rng.randint(-hi, hi), rng.randint(-hi, hi))
    if kind == "mul":
        h = 10 ** ((ndigits + 1) // 2)
        return (rng.randint(0, h), rng.randint(0, h))
    if kind == "div":
        # dividend = divisor * quotient: divisor takes ~nd/5 of the digits
        kd = max(1, (ndigits + 2) // 5)
        n = rng.randint(1, 10 ** kd)
        if ndigits < 6:
            return (n * rng.randint(0, 10 ** (ndigits - kd)), n)
        span = 10 ** (ndigits - kd)
        q = rng.randint(span // 2, span) * rng.choice((1, -1))
        return (n * q, n)
    if kind == "mod":
        if ndigits < 6:
            kd = 1
        elif ndigits < 12:
            kd = rng.choice((1, 2))
        else:
            kd = 2
        n = rng.randint(2, 10 ** kd)
        span = 10 ** (ndigits - kd)
        q = rng.randint(span // 2, span)
        r = rng.randint(0, n - 1)
        return (n * q + r, n)
    if kind == "exp":
        # most tasks close by the zeroth/first power lemmas; a calibrated
        # fraction squares a smaller base
        if ndigits < 6:
            p2, k2 = 0.02, (ndigits + 1) // 2
        elif ndigits < 12:
            p2, k2 = 0.48, 2
        else:
            p2, k2 = 0.08, (ndigits + 1) // 2
        if rng.random() < p2:
            return (rng.randint(0, 10 ** k2), 2)
        return (rng.randint(0, hi), rng.randint(0, 1))
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def gen_arith(db: Database, kind: str, ndigits: int, rng: random.Random,
              label: str = "") -> GeneratedProof:
    """Sample one task and build its verified proof."""
    if ndigits < 1:
        raise ValueError("ndigits must be >= 1")
    ops = sample_operands(kind, ndigits, rng)
    g = arith_proof(db, kind, ops, label)
    g.meta["ndigits"] = ndigits
    return g


def gen_ring(db: Database, depth: int, nbvar: int, rng: random.Random,
             label: str = "",
             weights: dict[str, int] | None = None) -> GeneratedProof:
    """Seed ``T = T``, apply ``depth`` weighted transformations, verify."""
    res = build_ring_proof(db, nbvar, depth, rng, weights)
    g = _finish(db, label, "ring", res.root,
                {"depth": depth, "achieved": res.depth_achieved,
                 "nbvar": nbvar, "reached_depth": res.depth_achieved == depth})
    return g


def gen_test_statements(db: Database, kind: str, n: int, rng: random.Random,
                        ndigits: int = 9, depth: int = 6,
                        nbvar: int = 2) -> list[str]:
    """Fresh evaluation statements (proofs built as oracle, then discarded)."""
    out = []
    for _ in range(n):
        if kind == "ring":
            g = gen_ring(db, depth, nbvar, rng)
        else:
            g = gen_arith(db, kind, ndigits, rng)
        out.append(g.statement_text)
    return out


def fixture_theorems(db: Database, seed: int):
    """The synthetic theorem block baked into the bundled fixture library."""
    rng = random.Random(seed)
    jobs = []
    for i in range(60):
        jobs.append((f"synadd{i:03d}", "add", {"ndigits": 1 + i % 3}))
    for i in range(20):
        jobs.append((f"synmul{i:03d}", "mul", {"ndigits": 2 + i % 2}))
    for i in range(20):
        jobs.append((f"syndiv{i:03d}", "div", {"ndigits": 2 + i % 3}))
    for i in range(20):
        jobs.append((f"synmod{i:03d}", "mod", {"ndigits": 2 + i % 3}))
    for i in range(15):
        jobs.append((f"synexp{i:03d}", "exp", {"ndigits": 1 + i % 2}))
    for i in range(25):
        jobs.append((f"synring{i:03d}", "ring",
                     {"depth": 1 + i % 4, "nbvar": 1 + i % 3}))
    seen_stmts = {a.statement_text() for a in db.assertions}
    for idx, (label, kind, kw) in enumerate(jobs):
        for _ in range(50):
            if kind == "ring":
                g = gen_ring(db, kw["depth"], kw["nbvar"], rng, label)
            else:
                g = gen_arith(db, kind, kw["ndigits"], rng, label)
            if g.statement_text not in seen_stmts:
                seen_stmts.add(g.statement_text)
                break
        else:
            raise RuntimeError(f"could not draw a fresh statement for {label}")
        fmt = "compressed" if idx % 3 else "normal"
        yield label, " ".join(g.expr), g.root, fmt
