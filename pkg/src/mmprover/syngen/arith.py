"""Synthetic decimal arithmetic proofs.

Builds verified proofs of ``( M <op> N ) = R`` statements digit by digit
against the database's decimal lemma family (``decadd``/``decaddc`` and
friends), sharing repeated sub-proofs (closures, digit facts) so each
proof is a DAG. Division, modulo and exponentiation reduce to
multiplications and additions through single translation lemmas.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..kernel import Database, Expr, ProofNode, make_step
from ..kernel.errors import MMError


def numeral(n: int) -> tuple[str, ...]:
    """Canonical set.mm decimal term for an integer (``-u`` prefix if negative)."""
    if n < 0:
        return ("-u",) + numeral(-n)
    if n < 10:
        return (str(n),)
    return (";",) + numeral(n // 10) + (str(n % 10),)


def num_str(n: int) -> str:
    return " ".join(numeral(n))


class ArithProver:
    """Per-proof builder with memoized shared sub-proofs."""

    def __init__(self, db: Database):
        self.db = db
        self.memo: dict[Expr, ProofNode] = {}

    # -- plumbing ---------------------------------------------------------
    def _step(self, label: str, subst: dict[str, str], children) -> ProofNode:
        s = {k: tuple(v.split()) for k, v in subst.items()}
        return make_step(self.db, label, s, list(children))

    def _memoize(self, node: ProofNode) -> ProofNode:
        return self.memo.setdefault(node.expr, node)

    def _fact(self, text: str) -> ProofNode:
        """Close a ground goal by the library fact with that exact statement."""
        expr = tuple(text.split())
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        asrt = self.db.lookup_statement(f"[[ ]] {text}")
        if asrt is None:
            raise MMError(f"database lacks arithmetic fact {text!r}")
        return self._memoize(self._step(asrt.label, {}, []))

    # -- closures ---------------------------------------------------------
    def nn0(self, n: int) -> ProofNode:
        expr = ("|-",) + numeral(n) + ("e.", "NN0")
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        if n < 10:
            node = self._step(f"{n}nn0", {}, [])
        else:
            node = self._step("deccl",
                              {"A": num_str(n // 10), "B": str(n % 10)},
                              [self.nn0(n // 10), self.nn0(n % 10)])
        return self._memoize(node)

    def nn(self, n: int) -> ProofNode:
        assert n >= 1
        expr = ("|-",) + numeral(n) + ("e.", "NN")
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        if n < 10:
            node = self._step(f"{n}nn", {}, [])
        else:
            node = self._step("decnncl",
                              {"A": num_str(n // 10), "B": str(n % 10)},
                              [self.nn(n // 10), self.nn0(n % 10)])
        return self._memoize(node)

    def cc(self, n: int) -> ProofNode:
        """Complex closure for a possibly negative integer literal."""
        expr = ("|-",) + numeral(n) + ("e.", "CC")
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        if n < 0:
            node = self._step("negcli", {"A": num_str(-n)}, [self.cc(-n)])
        else:
            node = self._step("nn0cni", {"A": num_str(n)}, [self.nn0(n)])
        return self._memoize(node)

    def ne0(self, n: int) -> ProofNode:
        assert n >= 1
        expr = ("|-",) + numeral(n) + ("=/=", "0")
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        node = self._step("nnne0i", {"A": num_str(n)}, [self.nn(n)])
        return self._memoize(node)

    # -- addition ---------------------------------------------------------
    def add(self, x: int, y: int) -> ProofNode:
        """Prove ``( X + Y ) = Z`` for nonnegative x, y."""
        assert x >= 0 and y >= 0
        z = x + y
        expr = ("|-", "(") + numeral(x) + ("+",) + numeral(y) + (")", "=") + numeral(z)
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        X, Y, Z = num_str(x), num_str(y), num_str(z)
        if x < 10 and y < 10:
            return self._fact(f"|- ( {X} + {Y} ) = {Z}")
        if x < 10:  # digit + big: commute
            node = self._step("addcomli", {"A": Y, "B": X, "C": Z},
                              [self.cc(y), self.cc(x), self.add(y, x)])
            return self._memoize(node)
        a, bd = x // 10, x % 10
        if y < 10:
            if bd + y < 10:
                node = self._step(
                    "decaddi",
                    {"A": num_str(a), "B": str(bd), "D": str(y),
                     "F": str(bd + y)},
                    [self.nn0(a), self.nn0(bd), self.nn0(y), self.add(bd, y)])
            else:
                node = self._step(
                    "decaddci",
                    {"A": num_str(a), "B": str(bd), "D": str(y),
                     "E": num_str(a + 1), "F": str((bd + y) % 10)},
                    [self.nn0(a), self.nn0(bd), self.nn0(y),
                     self.add(a, 1), self.add(bd, y)])
            return self._memoize(node)
        c, d = y // 10, y % 10
        if bd + d < 10:
            node = self._step(
                "decadd",
                {"A": num_str(a), "B": str(bd), "C": num_str(c), "D": str(d),
                 "E": num_str(a + c), "F": str(bd + d)},
                [self.nn0(a), self.nn0(bd), self.nn0(c), self.nn0(d),
                 self.add(a, c), self.add(bd, d)])
        else:
            node = self._step(
                "decaddc",
                {"A": num_str(a), "B": str(bd), "C": num_str(c), "D": str(d),
                 "G": num_str(a + c), "E": num_str(a + c + 1),
                 "F": str((bd + d) % 10)},
                [self.nn0(a), self.nn0(bd), self.nn0(c), self.nn0(d),
                 self.add(a, c), self.add(a + c, 1), self.add(bd, d)])
        return self._memoize(node)

    def addz(self, x: int, y: int) -> ProofNode:
        """Prove ``( X + Y ) = Z`` over signed integer literals."""
        z = x + y
        X, Y, Z = num_str(x), num_str(y), num_str(z)
        expr = ("|-", "(") + numeral(x) + ("+",) + numeral(y) + (")", "=") + numeral(z)
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        if x >= 0 and y >= 0:
            return self.add(x, y)
        if y == 0:
            node = self._step("addid1i", {"A": X}, [self.cc(x)])
        elif x == 0:
            node = self._step("addid2i", {"A": Y}, [self.cc(y)])
        elif x < 0 and y < 0:
            node = self._step("negdii",
                              {"A": num_str(-x), "B": num_str(-y), "C": num_str(-z)},
                              [self.cc(-x), self.cc(-y), self.add(-x, -y)])
        elif x < 0:  # negative + positive: commute
            node = self._step("addcomli", {"A": Y, "B": X, "C": Z},
                              [self.cc(y), self.cc(x), self.addz(y, x)])
        else:  # positive + negative: one step via the subtraction fact
            b = -y
            if x >= b:
                node = self._step(
                    "negaddi", {"A": X, "B": num_str(b), "C": Z},
                    [self.cc(b), self.cc(z), self.add(b, z)])
            else:
                c = b - x
                node = self._step(
                    "negadd2i", {"A": X, "B": num_str(b), "C": num_str(c)},
                    [self.cc(x), self.cc(b - x), self.add(x, b - x)])
        return self._memoize(node)

    # -- multiplication ----------------------------------------------------
    def mul(self, x: int, y: int) -> ProofNode:
        """Prove ``( X x. Y ) = Z`` for nonnegative x, y."""
        assert x >= 0 and y >= 0
        z = x * y
        expr = ("|-", "(") + numeral(x) + ("x.",) + numeral(y) + (")", "=") + numeral(z)
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        X, Y, Z = num_str(x), num_str(y), num_str(z)
        if y == 0 and x >= 10:
            node = self._step("mul01i", {"A": X}, [self.cc(x)])
        elif x == 0 and y >= 10:
            node = self._step("mul02i", {"A": Y}, [self.cc(y)])
        elif x < 10 and y < 10:
            return self._fact(f"|- ( {X} x. {Y} ) = {Z}")
        elif y < 10:
            a, bd = x // 10, x % 10
            low = bd * y
            if low < 10:
                node = self._step(
                    "decmul1",
                    {"A": num_str(a), "B": str(bd), "D": str(y),
                     "E": num_str(a * y), "F": str(low)},
                    [self.nn0(a), self.nn0(bd), self.nn0(y),
                     self.mul(a, y), self.mul(bd, y)])
            else:
                g, f = low // 10, low % 10
                node = self._step(
                    "decmul1c",
                    {"A": num_str(a), "B": str(bd), "D": str(y),
                     "G": str(g), "P": num_str(a * y),
                     "E": num_str(a * y + g), "F": str(f)},
                    [self.nn0(a), self.nn0(bd), self.nn0(y), self.nn0(g),
                     self.mul(a, y), self.add(a * y, g), self.mul(bd, y)])
        elif x < 10:  # digit x big: commute
            node = self._step("mulcomli", {"A": Y, "B": X, "C": Z},
                              [self.cc(y), self.cc(x), self.mul(y, x)])
        else:
            c, d = y // 10, y % 10
            p, q = x * c, x * d
            node = self._step(
                "decmul2",
                {"M": X, "C": num_str(c), "D": str(d),
                 "P": num_str(p), "Q": num_str(q), "R": Z},
                [self.nn0(x), self.nn0(c), self.nn0(d),
                 self.mul(x, c), self.mul(x, d), self.add(p * 10, q)])
        return self._memoize(node)

    def mulz(self, x: int, y: int) -> ProofNode:
        """Signed multiplication (negative operands via sign lemmas)."""
        if x >= 0 and y >= 0:
            return self.mul(x, y)
        raise MMError("signed multiplication tasks are generated nonnegative")

    # -- order -------------------------------------------------------------
    def lt(self, r: int, n: int) -> ProofNode:
        """Prove ``R < N`` for nonnegative r < n."""
        assert 0 <= r < n
        expr = ("|-",) + numeral(r) + ("<",) + numeral(n)
        hit = self.memo.get(expr)
        if hit is not None:
            return hit
        if r < 10 and n < 10:
            return self._fact(f"|- {r} < {n}")
        if r < 10:
            node = self._step(
                "declti",
                {"A": str(r), "B": num_str(n // 10), "C": str(n % 10)},
                [self.nn(n // 10), self.nn0(n % 10), self._fact(f"|- {r} < ; 1 0")])
            return self._memoize(node)
        a, bd = r // 10, r % 10
        c, d = n // 10, n % 10
        if a == c:
            node = self._step(
                "declt",
                {"A": num_str(a), "B": str(bd), "C": str(d)},
                [self.nn0(a), self.lt(bd, d)])
        else:
            node = self._step(
                "decltc",
                {"A": num_str(a), "B": str(bd), "C": num_str(c), "D": str(d)},
                [self.nn0(a), self.nn0(bd), self.nn0(d), self.lt(a, c),
                 self._fact(f"|- {bd} < ; 1 0")])
        return self._memoize(node)

    # -- division / modulo / exponentiation --------------------------------
    def div(self, m: int, n: int) -> ProofNode:
        """Prove ``( M / N ) = Q`` for exact division, positive divisor."""
        assert n >= 1 and m % n == 0
        q = m // n
        if m >= 0:
            node = self._step(
                "divmuli",
                {"A": num_str(m), "B": num_str(n), "C": num_str(q)},
                [self.cc(n), self.cc(q), self.ne0(n), self.mul(q, n)])
            return self._memoize(node)
        am, aq = -m, -q
        M, N, Q = num_str(am), num_str(n), num_str(aq)
        d1 = self._step("divnegi", {"A": M, "B": N},
                        [self.cc(am), self.cc(n), self.ne0(n)])
        d2 = self._step("eqcomi",
                        {"A": f"-u ( {M} / {N} )", "B": f"( -u {M} / {N} )"},
                        [d1])
        d4 = self._step("negeqi", {"A": f"( {M} / {N} )", "B": Q},
                        [self.div(am, n)])
        node = self._step(
            "eqtri",
            {"A": f"( -u {M} / {N} )", "B": f"-u ( {M} / {N} )", "C": f"-u {Q}"},
            [d2, d4])
        return self._memoize(node)

    def mod(self, m: int, n: int) -> ProofNode:
        """Prove ``( M mod N ) = R`` for nonnegative m, positive n."""
        assert m >= 0 and n >= 1
        q, r = divmod(m, n)
        node = self._step(
            "modmuladdi",
            {"Q": num_str(q), "R": num_str(r), "N": num_str(n),
             "M": num_str(m), "P": num_str(n * q)},
            [self.nn0(q), self.nn0(r), self.nn(n), self.lt(r, n),
             self.mul(n, q), self.add(n * q, r)])
        return self._memoize(node)

    def exp(self, b: int, e: int) -> ProofNode:
        """Prove ``( B ^ E ) = C`` for nonnegative base and exponent."""
        assert b >= 0 and e >= 0
        if e == 0:
            node = self._step("exp0i", {"A": num_str(b)}, [self.cc(b)])
            return self._memoize(node)
        if e == 1:
            node = self._step("exp1i", {"A": num_str(b)}, [self.cc(b)])
            return self._memoize(node)
        prev = b ** (e - 1)
        node = self._step(
            "expp1i",
            {"A": num_str(b), "N": num_str(e - 1), "M": num_str(e),
             "B": num_str(prev), "C": num_str(prev * b)},
            [self.cc(b), self.nn0(e - 1), self.add(e - 1, 1),
             self.exp(b, e - 1), self.mul(prev, b)])
        return self._memoize(node)
