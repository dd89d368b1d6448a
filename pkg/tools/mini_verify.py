#!/usr/bin/env python3
"""Independent single-pass Metamath verifier for cross-checking.

Deliberately shares no code with the main package: a classic streaming
design (verify each $p as soon as it is parsed, frames tracked as a
stack) in the style of the community's minimal reference verifiers. Used
by the test suite to re-verify the bundled snapshot and exported proofs
through a second implementation.

Usage: python3 tools/mini_verify.py FILE.mm
"""

import itertools
import sys


class Frame:
    def __init__(self):
        self.v = set()
        self.d = set()
        self.f = []          # (var, typecode, label)
        self.e = []          # (expr, label)
        self.f_labels = {}
        self.e_labels = {}


class FrameStack(list):
    def push(self):
        self.append(Frame())

    def add_d(self, vars_):
        for x, y in itertools.combinations(sorted(set(vars_)), 2):
            if x == y:
                raise ValueError("$d repeats a variable")
            self[-1].d.add((x, y))

    def lookup_v(self, tok):
        return any(tok in fr.v for fr in self)

    def lookup_f(self, var):
        for fr in reversed(self):
            if var in fr.f_labels:
                return fr.f_labels[var]
        raise ValueError(f"no active $f for {var}")

    def lookup_d(self, x, y):
        return any((min(x, y), max(x, y)) in fr.d for fr in self)

    def make_assertion(self, stmt):
        e_hyps = [eh for fr in self for eh in fr.e]
        mand_vars = {tok for hyp, _ in itertools.chain(
            [(stmt, None)], e_hyps) for tok in hyp if self.lookup_v(tok)}
        dvs = {(x, y) for fr in self for (x, y) in fr.d
               if x in mand_vars and y in mand_vars}
        f_hyps = []
        for fr in self:
            for v, tc, lab in fr.f:
                if v in mand_vars:
                    f_hyps.append((tc, v))
        return dvs, f_hyps, [h for h, _ in e_hyps], stmt


def decompress(m, refs, blob):
    ints = []
    num = 0
    for ch in blob:
        if "U" <= ch <= "Y":
            num = num * 5 + ord(ch) - ord("U") + 1
        elif "A" <= ch <= "T":
            ints.append(num * 20 + ord(ch) - ord("A") + 1)
            num = 0
        elif ch == "Z":
            ints.append(0)
        else:
            raise ValueError(f"bad compressed char {ch!r}")
    if num:
        raise ValueError("truncated number")
    return ints


class Verifier:
    def __init__(self):
        self.fs = FrameStack()
        self.fs.push()
        self.labels = {}     # label -> ("$a"/"$p", assertion) | ("$f"/"$e", stmt)
        self.constants = set()
        self.checked = 0

    def read(self, toks):
        label = None
        while toks:
            tok = toks.pop(0)
            if tok == "$c":
                for t in self._until(toks, "$."):
                    self.constants.add(t)
            elif tok == "$v":
                for t in self._until(toks, "$."):
                    self.fs[-1].v.add(t)
            elif tok == "$d":
                self.fs.add_d(self._until(toks, "$."))
            elif tok == "${":
                self.fs.push()
            elif tok == "$}":
                self.fs.pop()
            elif tok == "$f":
                tc, var = self._until(toks, "$.")
                self.fs[-1].f.append((var, tc, label))
                self.fs[-1].f_labels[var] = (tc, var)
                self.labels[label] = ("$f", [tc, var])
                label = None
            elif tok == "$e":
                stmt = self._until(toks, "$.")
                self.fs[-1].e.append((stmt, label))
                self.labels[label] = ("$e", stmt)
                label = None
            elif tok == "$a":
                self.labels[label] = (
                    "$a", self.fs.make_assertion(self._until(toks, "$.")))
                label = None
            elif tok == "$p":
                stmt = self._until(toks, "$=")
                proof = self._until(toks, "$.")
                assertion = self.fs.make_assertion(stmt)
                self.verify(label, stmt, proof)
                self.labels[label] = ("$p", assertion)
                self.checked += 1
                label = None
            else:
                label = tok

    @staticmethod
    def _until(toks, end):
        out = []
        while True:
            t = toks.pop(0)
            if t == end:
                return out
            out.append(t)

    def apply_subst(self, stmt, subst):
        out = []
        for tok in stmt:
            out.extend(subst.get(tok, [tok]))
        return out

    def find_vars(self, stmt):
        return [t for t in stmt if self.fs.lookup_v(t)]

    def step(self, stack, kind, data):
        if kind in ("$e", "$f"):
            stack.append(list(data))
            return
        dvs, f_hyps, e_hyps, concl = data
        npop = len(f_hyps) + len(e_hyps)
        if len(stack) < npop:
            raise ValueError("stack underflow")
        base = len(stack) - npop
        subst = {}
        for i, (tc, var) in enumerate(f_hyps):
            entry = stack[base + i]
            if entry[0] != tc:
                raise ValueError(f"typecode mismatch for {var}")
            subst[var] = entry[1:]
        for i, hyp in enumerate(e_hyps):
            if stack[base + len(f_hyps) + i] != self.apply_subst(hyp, subst):
                raise ValueError("essential hypothesis mismatch")
        for x, y in dvs:
            xv = self.find_vars(subst[x])
            yv = self.find_vars(subst[y])
            for a in xv:
                for b in yv:
                    if a == b or not self.fs.lookup_d(a, b):
                        raise ValueError(f"dv violation {a} {b}")
        del stack[base:]
        stack.append(self.apply_subst(concl, subst))

    def verify(self, label, stmt, proof):
        stack = []
        if proof and proof[0] == "(":
            close = proof.index(")")
            refs = proof[1:close]
            blob = "".join(proof[close + 1:])
            dvs, f_hyps, e_hyps, _ = self.fs.make_assertion(stmt)
            hyp_labels = []
            for tc, var in f_hyps:
                hyp_labels.append(("$f", [tc, var]))
            for fr in self.fs:
                for h, lab in fr.e:
                    hyp_labels.append(("$e", h))
            m = len(hyp_labels)
            saved = []
            for code in decompress(m, refs, blob):
                if code == 0:
                    saved.append(list(stack[-1]))
                elif code <= m:
                    kind, data = hyp_labels[code - 1]
                    self.step(stack, kind, data)
                elif code <= m + len(refs):
                    kind, data = self.labels[refs[code - m - 1]]
                    self.step(stack, kind, data)
                else:
                    stack.append(list(saved[code - m - len(refs) - 1]))
        else:
            for lab in proof:
                kind, data = self.labels[lab]
                self.step(stack, kind, data)
        if len(stack) != 1 or stack[0] != list(stmt):
            raise ValueError(f"{label}: proof does not prove the statement")


def strip_comments(text):
    toks = text.split()
    out = []
    depth = 0
    for t in toks:
        if t == "$(":
            depth += 1
        elif t == "$)":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced comment")
        elif depth == 0:
            out.append(t)
    if depth:
        raise ValueError("unterminated comment")
    return out


def verify_file(path):
    v = Verifier()
    v.read(strip_comments(open(path).read()))
    return v.checked


if __name__ == "__main__":
    n = verify_file(sys.argv[1])
    print(f"mini-verify: {n} $p statements verified")
