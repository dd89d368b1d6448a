"""Exporting in-memory proof trees to official ``.mm`` proof format.

A :class:`~mmprover.kernel.proofs.ProofNode` tree only records logical
steps; the emitted label sequence additionally contains the syntax-axiom
applications that build each substituted term, exactly as normal-format
Metamath proofs do. Both normal and compressed output are supported; the
compressed encoder tags repeated sub-proofs with ``Z`` back-references.
"""

from __future__ import annotations

from .database import Database, Expr
from .errors import MalformedProofError, OpenGoalError
from .grammar import Term
from .proofs import HypLeaf, ProofNode


def _term_labels(db: Database, term: Term, f_label, out: list[str]) -> None:
    if term.var is not None:
        out.append(f_label(term.var))
        return
    # children are in token order; the proof stack wants $f frame order
    asrt = db.by_label[term.label]
    tok_vars = [t for t in asrt.expr[1:] if db.is_var(t)]
    child_by_var = dict(zip(tok_vars, term.children))
    for v in asrt.frame.mand_vars:
        _term_labels(db, child_by_var[v], f_label, out)
    out.append(term.label)


def proof_labels(db: Database, root, hyp_labels: dict[Expr, str],
                 f_label=None) -> list[str]:
    """Normal-format RPN label sequence for a proof tree.

    ``hyp_labels`` maps essential-hypothesis expressions of the target
    statement to their labels; ``f_label`` resolves a variable to its
    active ``$f`` label (defaults to the database's top-level ones).
    """
    if f_label is None:
        top = {h.var: h.label for h in db.hyp_by_label.values() if h.kind == "f"}
        f_label = top.__getitem__
    out: list[str] = []

    def emit(item) -> None:
        if isinstance(item, HypLeaf):
            label = hyp_labels.get(item.expr)
            if label is None:
                raise OpenGoalError(
                    f"hypothesis {' '.join(item.expr)} has no label in the "
                    f"exported frame")
            out.append(label)
            return
        if not isinstance(item, ProofNode):
            raise OpenGoalError("proof tree contains an open goal")
        asrt = db.by_label[item.label]
        ci = iter(item.children)
        for h in asrt.frame.mand_hyps:
            if h.kind == "f":
                term = db.grammar.parse(h.expr[0], item.subst[h.var])
                _term_labels(db, term, f_label, out)
            else:
                emit(next(ci))
        out.append(item.label)

    emit(root)
    return out


def _encode(n: int) -> str:
    s = chr(ord("A") + (n - 1) % 20)
    n = (n - 1) // 20
    while n:
        s = chr(ord("U") + (n - 1) % 5) + s
        n = (n - 1) // 5
    return s


def compress_proof(db: Database, mand_hyps: list[str], labels: list[str]) -> str:
    """Encode a normal label sequence in the official compressed format.

    ``mand_hyps`` are the target frame's mandatory hypothesis labels (they
    get the low numbers and stay out of the parenthesized list). Repeated
    multi-step sub-proofs are ``Z``-tagged on first occurrence and
    referenced afterwards.
    """
    arity: dict[str, int] = {}

    def get_arity(label: str) -> int:
        n = arity.get(label)
        if n is None:
            a = db.by_label.get(label)
            n = len(a.frame.mand_hyps) if a is not None else 0
            arity[label] = n
        return n

    stack: list[tuple] = []
    for label in labels:
        n = get_arity(label)
        if n:
            if n > len(stack):
                raise MalformedProofError(f"underflow compressing at {label}")
            key = (label,) + tuple(stack[-n:])
            del stack[-n:]
        else:
            key = (label,)
        stack.append(key)
    if len(stack) != 1:
        raise MalformedProofError("label sequence is not a complete proof")
    root = stack[0]

    # first pass: occurrence counts and parenthesized-label order
    counts: dict[tuple, int] = {}
    order: list[str] = []
    seen_label: set[str] = set(mand_hyps)

    def scan(key: tuple) -> None:
        counts[key] = counts.get(key, 0) + 1
        if counts[key] > 1:
            return  # shared sub-proof: contents will be referenced, not re-emitted
        for k in key[1:]:
            scan(k)
        if key[0] not in seen_label:
            seen_label.add(key[0])
            order.append(key[0])

    scan(root)

    m = len(mand_hyps)
    num = {lab: i + 1 for i, lab in enumerate(mand_hyps)}
    num.update({lab: m + 1 + i for i, lab in enumerate(order)})
    base = m + len(order)
    tagged: dict[tuple, int] = {}
    codes: list[str] = []
    ntags = 0

    def emit(key: tuple) -> None:
        nonlocal ntags
        tag = tagged.get(key)
        if tag is not None:
            codes.append(_encode(tag))
            return
        for k in key[1:]:
            emit(k)
        codes.append(_encode(num[key[0]]))
        if len(key) > 1 and counts.get(key, 0) > 1:
            codes.append("Z")
            ntags += 1
            tagged[key] = base + ntags

    emit(root)
    blob = "".join(codes)
    head = "( " + " ".join(order) + " )" if order else "( )"
    return f"{head} {blob}"


def export_proof(db: Database, label: str, expr: Expr,
                 e_hyps: list[Expr], dv_pairs, root,
                 fmt: str = "compressed") -> str:
    """Render a proved statement as a ``.mm`` block ready to splice.

    ``e_hyps`` and ``dv_pairs`` describe the statement's frame; essential
    hypotheses get ``<label>.N`` labels. Raises
    :class:`~mmprover.kernel.errors.OpenGoalError` on incomplete trees.
    """
    if not isinstance(root, (ProofNode, HypLeaf)):
        raise OpenGoalError("cannot export: proof tree root is open")
    e_hyps = [tuple(h) for h in e_hyps]
    hyp_labels = {h: f"{label}.{i + 1}" for i, h in enumerate(e_hyps)}
    labels = proof_labels(db, root, hyp_labels)

    mand_vars = db.expr_vars(expr)
    for h in e_hyps:
        mand_vars |= db.expr_vars(h)
    f_hyps = sorted(
        (h.seq, h.label) for h in db.hyp_by_label.values()
        if h.kind == "f" and h.var in mand_vars)
    # statement is spliced at the end of the file, so global $f come first
    order = [lab for _, lab in f_hyps] + [hyp_labels[h] for h in e_hyps]

    if fmt == "compressed":
        proof_text = compress_proof(db, order, labels)
    elif fmt == "normal":
        proof_text = " ".join(labels)
    else:
        raise ValueError(f"unknown proof format {fmt!r}")

    lines: list[str] = []
    indent = ""
    block = bool(e_hyps or dv_pairs)
    if block:
        lines.append("${")
        indent = "  "
    for pair in sorted(tuple(p) for p in dv_pairs):
        lines.append(f"{indent}$d {pair[0]} {pair[1]} $.")
    for i, h in enumerate(e_hyps):
        lines.append(f"{indent}{label}.{i + 1} $e {' '.join(h)} $.")
    body = f"{indent}{label} $p {' '.join(expr)} $= {proof_text} $."
    lines.extend(_wrap(body, indent))
    if block:
        lines.append("$}")
    return "\n".join(lines) + "\n"


def _wrap(text: str, indent: str, width: int = 78) -> list[str]:
    words = text.split(" ")
    lines: list[str] = []
    cur = ""
    for w in words:
        if cur and len(cur) + 1 + len(w) > width:
            lines.append(cur)
            cur = indent + "    " + w
        else:
            cur = w if not cur else cur + " " + w
    if cur:
        lines.append(cur)
    return lines
