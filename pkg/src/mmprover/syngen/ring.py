"""Synthetic ring-algebra equality proofs.

Starts from an identity ``T = T`` over a handful of integer variables and
iteratively rewrites one side at a random applicable site using a
weighted pool of commutativity/associativity/distributivity/squaring
lemmas, in deduction form under a ZZ-membership context. Every
transformation extends the proof through congruence and transitivity
steps, so the result is a kernel-verified equality of the final shape.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..kernel import Database, ProofNode, make_step

# rewrite rules: label -> (weight, structural pattern)
RING_WEIGHTS = {
    "eqcomd": 1,
    "int-addcomd": 1,
    "int-addassocd": 1,
    "int-mulcomd": 1,
    "int-mulassocd": 1,
    "int-leftdistd": 3,
    "int-rightdistd": 3,
    "int-sqdefd": 5,
    "muladdd2": 5,
}

VARS = ("A", "B", "C")


def render(t) -> str:
    op = t[0]
    if op == "v":
        return t[1]
    if op == "+":
        return f"( {render(t[1])} + {render(t[2])} )"
    if op == "*":
        return f"( {render(t[1])} x. {render(t[2])} )"
    if op == "sq":
        return f"( {render(t[1])} ^ 2 )"
    raise ValueError(op)


def subterm_sites(t, path=()):
    """Yield (path, subterm) for every position, preorder."""
    yield path, t
    if t[0] in ("+", "*"):
        yield from subterm_sites(t[1], path + (1,))
        yield from subterm_sites(t[2], path + (2,))
    elif t[0] == "sq":
        yield from subterm_sites(t[1], path + (1,))


def _match(label: str, t):
    """Return the rewritten subterm if the rule applies at ``t``."""
    op = t[0]
    if label == "int-addcomd" and op == "+":
        return ("+", t[2], t[1])
    if label == "int-addassocd" and op == "+" and t[1][0] == "+":
        return ("+", t[1][1], ("+", t[1][2], t[2]))
    if label == "int-mulcomd" and op == "*":
        return ("*", t[2], t[1])
    if label == "int-mulassocd" and op == "*" and t[1][0] == "*":
        return ("*", t[1][1], ("*", t[1][2], t[2]))
    if label == "int-leftdistd" and op == "*" and t[2][0] == "+":
        return ("+", ("*", t[1], t[2][1]), ("*", t[1], t[2][2]))
    if label == "int-rightdistd" and op == "*" and t[1][0] == "+":
        return ("+", ("*", t[1][1], t[2]), ("*", t[1][2], t[2]))
    if label == "int-sqdefd" and op == "sq":
        return ("*", t[1], t[1])
    if label == "muladdd2" and op == "*" and t[1][0] == "+" and t[2][0] == "+":
        a, b = t[1][1], t[1][2]
        c, d = t[2][1], t[2][2]
        return ("+",
                ("+", ("*", a, c), ("*", a, d)),
                ("+", ("*", b, c), ("*", b, d)))
    return None


class RingProver:
    """One proof-in-progress over a fixed variable context."""

    def __init__(self, db: Database, nbvar: int):
        if not 1 <= nbvar <= len(VARS):
            raise ValueError(f"nbvar must be 1..{len(VARS)}")
        self.db = db
        self.nbvar = nbvar
        self.vars = VARS[:nbvar]
        memb = [f"{v} e. ZZ" for v in self.vars]
        if nbvar == 1:
            self.ph = memb[0]
        else:
            self.ph = "( " + " /\\ ".join(memb) + " )"
        self._zz_memo: dict = {}

    def _step(self, label: str, subst: dict[str, str], children) -> ProofNode:
        s = {k: tuple(v.split()) for k, v in subst.items()}
        return make_step(self.db, label, s, list(children))

    def zz(self, t) -> ProofNode:
        """Prove ``( ph -> <t> e. ZZ )``; shared per subterm."""
        hit = self._zz_memo.get(t)
        if hit is not None:
            return hit
        op = t[0]
        if op == "v":
            if self.nbvar == 1:
                node = self._step("id", {"ph": f"{t[1]} e. ZZ"}, [])
            elif self.nbvar == 2:
                lab = "simpl" if t[1] == "A" else "simpr"
                node = self._step(lab, {"ph": "A e. ZZ", "ps": "B e. ZZ"}, [])
            else:
                lab = {"A": "simp1", "B": "simp2", "C": "simp3"}[t[1]]
                node = self._step(
                    lab, {"ph": "A e. ZZ", "ps": "B e. ZZ", "ch": "C e. ZZ"}, [])
        elif op == "+":
            node = self._step("zaddcld",
                              {"ph": self.ph, "A": render(t[1]), "B": render(t[2])},
                              [self.zz(t[1]), self.zz(t[2])])
        elif op == "*":
            node = self._step("zmulcld",
                              {"ph": self.ph, "A": render(t[1]), "B": render(t[2])},
                              [self.zz(t[1]), self.zz(t[2])])
        else:
            node = self._step("zsqcld", {"ph": self.ph, "A": render(t[1])},
                              [self.zz(t[1])])
        self._zz_memo[t] = node
        return node

    def rule_node(self, label: str, t) -> ProofNode:
        """Prove ``( ph -> <t> = <rewritten t> )`` at the site itself."""
        ph = self.ph
        if label == "int-sqdefd":
            return self._step(label, {"ph": ph, "A": render(t[1])},
                              [self.zz(t[1])])
        if label in ("int-addcomd", "int-mulcomd"):
            return self._step(label,
                              {"ph": ph, "A": render(t[1]), "B": render(t[2])},
                              [self.zz(t[1]), self.zz(t[2])])
        if label in ("int-addassocd", "int-mulassocd"):
            a, b, c = t[1][1], t[1][2], t[2]
            return self._step(label,
                              {"ph": ph, "A": render(a), "B": render(b),
                               "C": render(c)},
                              [self.zz(a), self.zz(b), self.zz(c)])
        if label == "int-leftdistd":
            a, b, c = t[1], t[2][1], t[2][2]
            return self._step(label,
                              {"ph": ph, "A": render(a), "B": render(b),
                               "C": render(c)},
                              [self.zz(a), self.zz(b), self.zz(c)])
        if label == "int-rightdistd":
            a, b, c = t[1][1], t[1][2], t[2]
            return self._step(label,
                              {"ph": ph, "A": render(a), "B": render(b),
                               "C": render(c)},
                              [self.zz(a), self.zz(b), self.zz(c)])
        if label == "muladdd2":
            a, b, c, d = t[1][1], t[1][2], t[2][1], t[2][2]
            return self._step(label,
                              {"ph": ph, "A": render(a), "B": render(b),
                               "C": render(c), "D": render(d)},
                              [self.zz(a), self.zz(b), self.zz(c), self.zz(d)])
        raise ValueError(label)

    def lift(self, whole, path, base_node: ProofNode, new_sub):
        """Lift ``(ph -> old_sub = new_sub)`` through the context to the root."""
        node = base_node
        cur_old = _at(whole, path)
        cur_new = new_sub
        for depth in range(len(path), 0, -1):
            parent = _at(whole, path[:depth - 1])
            idx = path[depth - 1]
            op = parent[0]
            if op == "sq":
                f, other, first = "^", "2", True
            else:
                f = "+" if op == "+" else "x."
                first = idx == 1
                other = render(parent[2] if first else parent[1])
            lab = "oveq1d" if first else "oveq2d"
            node = self._step(lab,
                              {"ph": self.ph, "A": render(cur_old),
                               "B": render(cur_new), "C": other, "F": f},
                              [node])
            lst = list(parent)
            lst[idx] = cur_new
            cur_new = tuple(lst)
            cur_old = parent
        return node, cur_new


def _at(t, path):
    for i in path:
        t = t[i]
    return t


@dataclass
class RingResult:
    lhs: tuple
    rhs: tuple
    root: ProofNode
    depth_achieved: int
    ph: str


def weighted_rule(rng: random.Random, weights: dict[str, int] | None = None) -> str:
    """Draw one rule label proportional to the hand-set weights."""
    w = weights or RING_WEIGHTS
    labels = list(w)
    total = sum(w.values())
    r = rng.random() * total
    acc = 0.0
    for lab in labels:
        acc += w[lab]
        if r < acc:
            return lab
    return labels[-1]


def seed_term(rng: random.Random, nbvar: int, need_structure: bool):
    leaves = [("v", v) for v in VARS[:nbvar]]
    rng.shuffle(leaves)
    if nbvar == 1 and not need_structure:
        return leaves[0]
    # pad with repeated variables for richer shapes
    for _ in range(rng.randint(2, 3) + (1 if need_structure and nbvar == 1 else 0)):
        leaves.append(("v", rng.choice(VARS[:nbvar])))
    terms = leaves[:]
    while len(terms) > 1:
        i = rng.randrange(len(terms) - 1)
        op = "+" if rng.random() < 0.5 else "*"
        terms[i:i + 2] = [(op, terms[i], terms[i + 1])]
    t = terms[0]
    if rng.random() < 0.5:
        sites = [p for p, s in subterm_sites(t) if s[0] != "sq"]
        p = rng.choice(sites)
        t = _wrap_sq(t, p)
    return t


def _wrap_sq(t, path):
    if not path:
        return ("sq", t)
    lst = list(t)
    lst[path[0]] = _wrap_sq(t[path[0]], path[1:])
    return tuple(lst)


def build_ring_proof(db: Database, nbvar: int, depth: int,
                     rng: random.Random,
                     weights: dict[str, int] | None = None,
                     max_draws: int = 200) -> RingResult:
    """Run the iterative transformation and return the proved equality."""
    rp = RingProver(db, nbvar)
    seed = seed_term(rng, nbvar, need_structure=depth > 0)
    lhs = rhs = seed
    node = rp._step("eqidd", {"ph": rp.ph, "A": render(seed)}, [])
    achieved = 0
    draws = 0
    while achieved < depth and draws < max_draws:
        draws += 1
        label = weighted_rule(rng, weights)
        if label == "eqcomd":
            node = rp._step("eqcomd",
                            {"ph": rp.ph, "A": render(lhs), "B": render(rhs)},
                            [node])
            lhs, rhs = rhs, lhs
            achieved += 1
            continue
        sites = []
        for side, term in (("L", lhs), ("R", rhs)):
            for path, sub in subterm_sites(term):
                if _match(label, sub) is not None:
                    sites.append((side, path, sub))
        if not sites:
            continue
        side, path, sub = sites[rng.randrange(len(sites))]
        new_sub = _match(label, sub)
        base = rp.rule_node(label, sub)
        whole = lhs if side == "L" else rhs
        lifted, new_whole = rp.lift(whole, path, base, new_sub)
        if side == "R":
            node = rp._step("eqtrd",
                            {"ph": rp.ph, "A": render(lhs), "B": render(rhs),
                             "C": render(new_whole)},
                            [node, lifted])
            rhs = new_whole
        else:
            node = rp._step("eqtr3d",
                            {"ph": rp.ph, "A": render(lhs),
                             "B": render(new_whole), "C": render(rhs)},
                            [lifted, node])
            lhs = new_whole
        achieved += 1
    return RingResult(lhs, rhs, node, achieved, rp.ph)
