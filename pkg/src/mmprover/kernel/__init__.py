"""Metamath kernel: database parsing, grammar, substitution, verification, export."""

from __future__ import annotations

from .database import (
    Assertion,
    Database,
    Expr,
    Frame,
    Hypothesis,
    parse_database,
    resolve_includes,
    tokenize,
)
from .errors import (
    AmbiguousParseError,
    DuplicateLabelError,
    DVViolationError,
    ForwardReferenceError,
    GrammarError,
    LexicalError,
    MalformedProofError,
    MMError,
    NoParseError,
    OpenGoalError,
    ProofError,
    ScopeError,
    StackUnderflowError,
    TypecodeMismatchError,
    UndeclaredSymbolError,
    UnificationError,
)
from .export import compress_proof, export_proof, proof_labels
from .grammar import Grammar, Term, apply_substitution
from .proofs import (
    HypLeaf,
    ProofNode,
    apply_assertion,
    check_dv,
    decompress_proof,
    subst_apply,
    verified_visited_labels,
    verify_proof,
)


def parse_term(db: Database, typecode: str, tokens) -> Term:
    """Parse a token string at a typecode; unique tree or a loud error."""
    return db.grammar.parse(typecode, tokens)


def statement_text(e_hyps, expr) -> str:
    """Canonical ``[[ hyps ]] |- conclusion`` form with single spacing."""
    hyps = " ".join(" ".join(h) for h in e_hyps)
    body = " ".join(expr)
    return f"[[ {hyps} ]] {body}" if hyps else f"[[ ]] {body}"


def make_step(db: Database, label: str, subst: dict[str, tuple],
              children: list, dv_all=frozenset()) -> ProofNode:
    """Build one verified proof step bottom-up.

    ``children`` supplies a proved node per essential hypothesis of
    ``label``, in frame order; their conclusions are checked against the
    substituted hypotheses so an ill-formed step cannot be constructed.
    """
    asrt = db.by_label[label]
    subst = {v: tuple(t) for v, t in subst.items()}
    concl, hyps = apply_assertion(db, asrt, subst, dv_all)
    if len(children) != len(hyps):
        raise UnificationError(
            f"{label} needs {len(hyps)} subproofs, got {len(children)}",
            label=label)
    for child, want in zip(children, hyps):
        if child.expr != want:
            raise UnificationError(
                f"{label}: subproof concludes {' '.join(child.expr)}, "
                f"hypothesis needs {' '.join(want)}", label=label)
    return ProofNode(label, subst, list(children), concl)


def verify_node(db: Database, root, expr: Expr, e_hyps,
                dv_all=frozenset(), ceiling: int | None = None) -> int:
    """Re-check every step of an in-memory proof tree against the kernel.

    Returns the number of distinct proof steps. ``ceiling`` enforces the
    benchmark constraint that only earlier library statements are cited.
    """
    hyp_set = {tuple(h) for h in e_hyps}
    if isinstance(root, HypLeaf):
        if root.expr != tuple(expr):
            raise UnificationError("hypothesis leaf does not match the statement")
        return 0
    if not isinstance(root, ProofNode) or root.expr != tuple(expr):
        raise UnificationError(
            f"proof concludes {' '.join(getattr(root, 'expr', ('?',)))}, "
            f"statement says {' '.join(expr)}")
    count = 0
    seen: set[int] = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, HypLeaf):
            if node.expr not in hyp_set:
                raise UnificationError(
                    f"leaf {' '.join(node.expr)} is not a hypothesis of the root")
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        count += 1
        asrt = db.by_label.get(node.label)
        if asrt is None:
            raise MalformedProofError(f"unknown statement {node.label!r}")
        if ceiling is not None and asrt.index >= ceiling:
            raise ForwardReferenceError(
                f"{node.label} (index {asrt.index}) cited at ceiling {ceiling}")
        concl, hyps = apply_assertion(db, asrt, node.subst, dv_all)
        if concl != node.expr:
            raise UnificationError(f"step {node.label} conclusion mismatch")
        if len(hyps) != len(node.children):
            raise UnificationError(f"step {node.label} arity mismatch")
        for child, want in zip(node.children, hyps):
            if child.expr != want:
                raise UnificationError(f"step {node.label} subproof mismatch")
            stack.append(child)
    return count
