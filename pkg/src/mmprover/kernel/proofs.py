"""Proof verification, compressed-proof decoding, and proof export.

Verification is a stack-machine replay over flat token tuples (no grammar
parsing involved), which keeps it fast. The replay can simultaneously
build a tree of :class:`ProofNode` objects — one per application of a
provable-typecode assertion — which is what dataset extraction, search
and export consume. Compressed-proof back-references make that tree a
DAG with genuinely shared sub-proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .database import Assertion, Database, Expr, Hypothesis, _pair
from .errors import (
    DVViolationError,
    ForwardReferenceError,
    MalformedProofError,
    OpenGoalError,
    StackUnderflowError,
    TypecodeMismatchError,
    UnificationError,
)


def subst_apply(expr, subst) -> Expr:
    out: list[str] = []
    for t in expr:
        s = subst.get(t)
        if s is None:
            out.append(t)
        else:
            out.extend(s)
    return tuple(out)


@dataclass
class HypLeaf:
    """A goal closed because it is an essential hypothesis of the root frame."""
    label: str
    expr: Expr


@dataclass
class ProofNode:
    """One application of a provable assertion: a proof step."""
    label: str
    subst: dict[str, Expr]          # mandatory var -> substituted tokens
    children: list                  # ProofNode | HypLeaf, one per $e hyp
    expr: Expr                      # substituted conclusion (with typecode)

    def iter_unique(self):
        """Yield each distinct node of the DAG once (preorder)."""
        seen: set[int] = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen or not isinstance(node, ProofNode):
                continue
            seen.add(id(node))
            yield node
            stack.extend(node.children)

    def step_key(self) -> tuple:
        return (self.label, self.expr,
                tuple(sorted(self.subst.items())))

    def step_count(self) -> int:
        """Number of distinct proof steps, deduplicated at the proof level.

        Keys on (applied statement, conclusion, substitution), so two
        tree branches deriving the same goal the same way count once even
        when they are separate objects.
        """
        return len({n.step_key() for n in self.iter_unique()})


@dataclass
class _TermItem:
    expr: Expr


def check_dv(db: Database, subst, assertion_dv, target_dv_all):
    """Return the list of distinct-variable violations for a substitution.

    For each dv pair of the applied assertion, the substituted variable
    sets must be disjoint and every cross pair must be licensed by the
    target frame's active dv set.
    """
    violations = []
    for x, y in assertion_dv:
        vx = db.expr_vars(subst.get(x, (x,)))
        vy = db.expr_vars(subst.get(y, (y,)))
        for a in vx:
            for b in vy:
                if a == b:
                    violations.append((a, b))
                elif _pair(a, b) not in target_dv_all:
                    violations.append(_pair(a, b))
    return violations


def apply_assertion(db: Database, asrt: Assertion, subst: dict[str, Expr],
                    target_dv_all) -> tuple[Expr, list[Expr]]:
    """Apply ``asrt`` under ``subst``; return (conclusion, substituted $e hyps).

    Raises on type-incorrect substitutions, unmapped mandatory variables,
    or dv violations. This is the single choke point used by tactic
    application, so search and sessions cannot construct ill-typed steps.
    """
    for v in asrt.frame.mand_vars:
        if v not in subst:
            raise UnificationError(f"variable {v} of {asrt.label} not substituted",
                                   label=asrt.label)
    for v, tokens in subst.items():
        tc = asrt.frame.var_types.get(v)
        if tc is None:
            raise UnificationError(f"{v} is not a mandatory variable of {asrt.label}",
                                   label=asrt.label)
    violations = check_dv(db, subst, asrt.frame.dv, target_dv_all)
    if violations:
        raise DVViolationError(f"distinct-variable violation applying {asrt.label}",
                               violations=violations, label=asrt.label)
    concl = subst_apply(asrt.expr, subst)
    hyps = [subst_apply(h.expr, subst) for h in asrt.frame.e_hyps]
    return concl, hyps


class _Replay:
    """Shared state for one proof replay."""

    def __init__(self, db: Database, target: Assertion, build_tree: bool):
        self.db = db
        self.target = target
        self.build_tree = build_tree
        self.stack: list[tuple[Expr, object]] = []
        self.step = 0
        self.visited_labels: set[str] = set()

    def push_hyp(self, h: Hypothesis):
        item = HypLeaf(h.label, h.expr) if h.kind == "e" else _TermItem(h.expr)
        self.stack.append((h.expr, item))

    def apply(self, asrt: Assertion):
        t = self.target
        if asrt.index >= t.index:
            raise ForwardReferenceError(
                f"{asrt.label} (index {asrt.index}) cited by {t.label} "
                f"(index {t.index})", step=self.step, label=t.label)
        frame = asrt.frame
        nh = len(frame.mand_hyps)
        if len(self.stack) < nh:
            raise StackUnderflowError(
                f"need {nh} stack entries for {asrt.label}, have {len(self.stack)}",
                step=self.step, label=t.label)
        entries = self.stack[len(self.stack) - nh:] if nh else []
        del self.stack[len(self.stack) - nh:]
        subst: dict[str, Expr] = {}
        for h, (expr, _item) in zip(frame.mand_hyps, entries):
            if h.kind == "f":
                if expr[0] != h.expr[0]:
                    raise UnificationError(
                        f"{asrt.label}: {h.var} needs typecode {h.expr[0]}, "
                        f"got {expr[0]}", step=self.step, label=t.label)
                subst[h.var] = expr[1:]
        children = []
        for h, (expr, item) in zip(frame.mand_hyps, entries):
            if h.kind == "e":
                want = subst_apply(h.expr, subst)
                if expr != want:
                    raise UnificationError(
                        f"{asrt.label}: hypothesis {h.label} mismatch",
                        step=self.step, label=t.label)
                children.append(item)
        violations = check_dv(self.db, subst, frame.dv, t.frame.dv_all)
        if violations:
            raise DVViolationError(
                f"dv violation citing {asrt.label}: {violations}",
                violations=violations, step=self.step, label=t.label)
        concl = subst_apply(asrt.expr, subst)
        if asrt.typecode == self.db.provable_tc and self.build_tree:
            item = ProofNode(asrt.label, subst, children, concl)
        else:
            item = _TermItem(concl)
        self.visited_labels.add(asrt.label)
        self.stack.append((concl, item))

    def do_label(self, label: str):
        self.step += 1
        db, t = self.db, self.target
        asrt = db.by_label.get(label)
        if asrt is not None:
            self.apply(asrt)
            return
        h = db.hyp_by_label.get(label)
        if h is not None and h.seq < t.decl_seq and h.scope_id in t.scope_ids:
            self.push_hyp(h)
            return
        if label == "?":
            raise MalformedProofError("incomplete proof (? step)",
                                      step=self.step, label=t.label)
        raise MalformedProofError(f"unknown or inactive label {label!r}",
                                  step=self.step, label=t.label)

    def finish(self):
        t = self.target
        if len(self.stack) != 1:
            raise UnificationError(
                f"proof ends with {len(self.stack)} stack entries, expected 1",
                step=self.step, label=t.label)
        expr, item = self.stack[0]
        if expr != t.expr:
            raise UnificationError(
                f"proved {' '.join(expr)}, statement says {' '.join(t.expr)}",
                step=self.step, label=t.label)
        return item


def _decode_compressed(blob: str, label: str):
    """Yield integers and 'Z' markers from a compressed proof letter blob."""
    num = 0
    for ch in blob:
        if "U" <= ch <= "Y":
            num = num * 5 + (ord(ch) - ord("U") + 1)
        elif "A" <= ch <= "T":
            yield num * 20 + (ord(ch) - ord("A") + 1)
            num = 0
        elif ch == "Z":
            if num:
                raise MalformedProofError("Z inside a number", label=label)
            yield "Z"
        elif ch == "?":
            raise MalformedProofError("incomplete proof (? step)", label=label)
        else:
            raise MalformedProofError(f"bad character {ch!r} in compressed proof",
                                      label=label)
    if num:
        raise MalformedProofError("truncated number in compressed proof", label=label)


def verify_proof(db: Database, thm: Assertion, build_tree: bool = False):
    """Replay ``thm``'s proof; return the root :class:`ProofNode` when asked.

    Raises a :class:`ProofError` subclass identifying the failing step on
    any soundness problem; returns the root item on success.
    """
    if thm.kind != "p":
        raise MalformedProofError(f"{thm.label} has no proof", label=thm.label)
    r = _Replay(db, thm, build_tree)
    if thm.compressed is not None:
        refs, blob = thm.compressed
        mand = thm.frame.mand_hyps
        m = len(mand)
        tagged: list[tuple[Expr, object]] = []
        for code in _decode_compressed(blob, thm.label):
            if code == "Z":
                if not r.stack:
                    raise MalformedProofError("Z with empty stack", label=thm.label)
                tagged.append(r.stack[-1])
                continue
            if code <= m:
                r.step += 1
                r.push_hyp(mand[code - 1])
            elif code <= m + len(refs):
                r.do_label(refs[code - m - 1])
            else:
                idx = code - m - len(refs) - 1
                if idx >= len(tagged):
                    raise MalformedProofError(
                        f"back-reference {code} out of range",
                        step=r.step, label=thm.label)
                r.step += 1
                r.stack.append(tagged[idx])  # shared sub-proof: DAG node reuse
    elif thm.proof is not None:
        for label in thm.proof:
            r.do_label(label)
    else:
        raise MalformedProofError(f"{thm.label} has an empty proof", label=thm.label)
    item = r.finish()
    return item


def verified_visited_labels(db: Database, thm: Assertion) -> set[str]:
    """Labels of assertions applied while replaying ``thm`` (for closure checks)."""
    r = _Replay(db, thm, build_tree=False)
    if thm.compressed is not None:
        for lab in decompress_proof(db, thm):
            r.do_label(lab)
    else:
        for lab in thm.proof:
            r.do_label(lab)
    r.finish()
    return r.visited_labels


def decompress_proof(db: Database, thm: Assertion) -> list[str]:
    """Expand a compressed proof into the equivalent normal label sequence."""
    if thm.compressed is None:
        if thm.proof is None:
            raise MalformedProofError(f"{thm.label} has no proof", label=thm.label)
        return list(thm.proof)
    refs, blob = thm.compressed
    mand = thm.frame.mand_hyps
    m = len(mand)
    stack: list[list[str]] = []
    tagged: list[list[str]] = []

    def arity(label: str) -> int:
        asrt = db.by_label.get(label)
        if asrt is not None:
            return len(asrt.frame.mand_hyps)
        if label in db.hyp_by_label:
            return 0
        raise MalformedProofError(f"unknown label {label!r} in proof", label=thm.label)

    for code in _decode_compressed(blob, thm.label):
        if code == "Z":
            if not stack:
                raise MalformedProofError("Z with empty stack", label=thm.label)
            tagged.append(stack[-1])
            continue
        if code <= m:
            stack.append([mand[code - 1].label])
        elif code <= m + len(refs):
            label = refs[code - m - 1]
            n = arity(label)
            if n > len(stack):
                raise StackUnderflowError(f"underflow expanding {label}",
                                          label=thm.label)
            popped = stack[len(stack) - n:] if n else []
            del stack[len(stack) - n:]
            seq: list[str] = []
            for p in popped:
                seq.extend(p)
            seq.append(label)
            stack.append(seq)
        else:
            idx = code - m - len(refs) - 1
            if idx >= len(tagged):
                raise MalformedProofError(f"back-reference {code} out of range",
                                          label=thm.label)
            stack.append(tagged[idx])
    if len(stack) != 1:
        raise MalformedProofError(
            f"decompression ends with {len(stack)} stack entries", label=thm.label)
    return list(stack[0])
