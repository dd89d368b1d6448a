"""Build the pinned fixture database ``fixtures/miniset.mm``.

Assembles the prelude + digit tables, machine-builds the worked theorem
proofs through the kernel (every step is checked at construction and the
result re-verified from the serialized text), appends a block of
synthetically generated arithmetic/ring theorems, and records the final
snapshot hash + counts in ``fixtures/miniset.json``.

Usage: python3 tools/build_fixture_db.py [--skip-synthetic]
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from fixture_prelude import PRELUDE, digit_tables

from mmprover.kernel import (
    HypLeaf,
    export_proof,
    make_step,
    parse_database,
    verify_proof,
)


class Builder:
    def __init__(self, text: str):
        self.text = text
        self.db = parse_database(text)
        self.dv = frozenset()

    def S(self, label: str, subst: dict | None = None, *children):
        s = {k: tuple(v.split()) for k, v in (subst or {}).items()}
        return make_step(self.db, label, s, list(children), self.dv)

    def add(self, label: str, expr: str, root, e_hyps=(), dv=(),
            fmt: str = "compressed", comment: str | None = None):
        block = export_proof(
            self.db, label, tuple(expr.split()),
            [tuple(h.split()) for h in e_hyps], dv, root, fmt)
        if comment:
            block = f"$( {comment} $)\n" + block
        self.text += "\n" + block
        self.db = parse_database(self.text)
        verify_proof(self.db, self.db.theorem(label))
        self.dv = frozenset()


def build_handmade(b: Builder) -> None:
    S = b.S

    # identity, the classic five-step proof
    s1 = S("ax-1", {"ph": "ph", "ps": "ph"})
    s2 = S("ax-1", {"ph": "ph", "ps": "( ph -> ph )"})
    s3 = S("ax-2", {"ph": "ph", "ps": "( ph -> ph )", "ch": "ph"})
    s4 = S("ax-mp", {"ph": "( ph -> ( ( ph -> ph ) -> ph ) )",
                     "ps": "( ( ph -> ( ph -> ph ) ) -> ( ph -> ph ) )"}, s2, s3)
    s5 = S("ax-mp", {"ph": "( ph -> ( ph -> ph ) )", "ps": "( ph -> ph )"}, s1, s4)
    b.add("id", "|- ( ph -> ph )", s5)

    # double modus ponens, with essential hypotheses
    h1 = HypLeaf("", ("|-", "ph"))
    h2 = HypLeaf("", ("|-", "ps"))
    h3 = HypLeaf("", tuple("|- ( ph -> ( ps -> ch ) )".split()))
    inner = S("ax-mp", {"ph": "ph", "ps": "( ps -> ch )"}, h1, h3)
    root = S("ax-mp", {"ph": "ps", "ps": "ch"}, h2, inner)
    b.add("mp2", "|- ch", root,
          e_hyps=["|- ph", "|- ps", "|- ( ph -> ( ps -> ch ) )"], fmt="normal")

    # ( n + 1 ) = n+1 from the digit definitions
    for n in range(1, 9):
        root = S("eqcomi", {"A": str(n + 1), "B": f"( {n} + 1 )"},
                 S(f"df-{n + 1}"))
        b.add(f"{n}p1e{n + 1}", f"|- ( {n} + 1 ) = {n + 1}", root)

    # ( 3 + 2 ) = 5 the long way round, visiting df-5
    cn1 = S("nn0cni", {"A": "1"}, S("1nn0"))
    cn3 = S("nn0cni", {"A": "3"}, S("3nn0"))
    t1 = S("oveq2i", {"A": "2", "B": "( 1 + 1 )", "C": "3", "F": "+"}, S("df-2"))
    t2 = S("addassi", {"A": "3", "B": "1", "C": "1"}, cn3, cn1, cn1)
    t3 = S("eqtr4i", {"A": "( 3 + 2 )", "B": "( 3 + ( 1 + 1 ) )",
                      "C": "( ( 3 + 1 ) + 1 )"}, t1, t2)
    t4 = S("oveq1i", {"A": "( 3 + 1 )", "B": "4", "C": "1", "F": "+"},
           S("3p1e4"))
    t5 = S("eqtri", {"A": "( 3 + 2 )", "B": "( ( 3 + 1 ) + 1 )",
                     "C": "( 4 + 1 )"}, t3, t4)
    root = S("eqtr4i", {"A": "( 3 + 2 )", "B": "( 4 + 1 )", "C": "5"},
             t5, S("df-5"))
    b.add("3p2e5", "|- ( 3 + 2 ) = 5", root)

    # union of the union of a converse
    lhs = "U. U. `' A"
    mid = "( ran `' A u. dom `' A )"
    rhs = "( dom A u. ran A )"
    root = S("eqtr4i", {"A": lhs, "B": mid, "C": rhs},
             S("unidmrnlem", {"A": "A"}),
             S("uneq12i",
               {"A": "dom A", "B": "ran `' A", "C": "ran A", "D": "dom `' A"},
               S("eqcomi", {"A": "ran `' A", "B": "dom A"}, S("rncnv", {"A": "A"})),
               S("eqcomi", {"A": "dom `' A", "B": "ran A"}, S("dmcnv", {"A": "A"}))))
    b.add("unidmrn", f"|- {lhs} = {rhs}", root)

    # distribution of implication over disjunction
    n_pm221 = S("pm2.21", {"ph": "ph", "ps": "ps"})
    n_orcd = S("orcd", {"ph": "-. ph", "ps": "( ph -> ps )",
                        "ch": "( ph -> ch )"}, n_pm221)
    n_ax1a = S("ax-1", {"ph": "ps", "ps": "ph"})
    n_ax1b = S("ax-1", {"ph": "ch", "ps": "ph"})
    n_orim = S("orim12i", {"ph": "ps", "ps": "( ph -> ps )",
                           "ch": "ch", "th": "( ph -> ch )"}, n_ax1a, n_ax1b)
    n_ja = S("ja", {"ph": "ph", "ps": "( ps \\/ ch )",
                    "ch": "( ( ph -> ps ) \\/ ( ph -> ch ) )"}, n_orcd, n_orim)
    n_orc = S("orc", {"ph": "ps", "ps": "ch"})
    n_im2a = S("imim2i", {"ph": "ps", "ps": "( ps \\/ ch )", "ch": "ph"}, n_orc)
    n_olc = S("olc", {"ph": "ch", "ps": "ps"})
    n_im2b = S("imim2i", {"ph": "ch", "ps": "( ps \\/ ch )", "ch": "ph"}, n_olc)
    n_jaoi = S("jaoi", {"ph": "( ph -> ps )", "ps": "( ph -> ( ps \\/ ch ) )",
                        "ch": "( ph -> ch )"}, n_im2a, n_im2b)
    n_impbii = S("impbii", {"ph": "( ph -> ( ps \\/ ch ) )",
                            "ps": "( ( ph -> ps ) \\/ ( ph -> ch ) )"},
                 n_ja, n_jaoi)
    root = S("bicomi", {"ph": "( ph -> ( ps \\/ ch ) )",
                        "ps": "( ( ph -> ps ) \\/ ( ph -> ch ) )"}, n_impbii)
    b.add("pm4.78",
          "|- ( ( ( ph -> ps ) \\/ ( ph -> ch ) ) <-> ( ph -> ( ps \\/ ch ) ) )",
          root)

    # nonnegative difference within an upper set of integers
    phi = "N e. ( ZZ>= ` M )"
    e_elz = S("eluzelz", {"M": "M", "N": "N"})
    e_el2 = S("eluzel2", {"M": "M", "N": "N"})
    n_zsub = S("zsubcld", {"ph": phi, "A": "N", "B": "M"}, e_elz, e_el2)
    e_le = S("eluzle", {"M": "M", "N": "N"})
    e_lre = S("eluzelre", {"M": "M", "N": "N"})
    e_el2b = S("eluzel2", {"M": "M", "N": "N"})
    n_zred = S("zred", {"ph": phi, "A": "M"}, e_el2b)
    n_subge = S("subge0d", {"ph": phi, "A": "N", "B": "M"}, e_lre, n_zred)
    n_mpbird = S("mpbird", {"ph": phi, "ps": "0 <_ ( N - M )", "ch": "M <_ N"},
                 e_le, n_subge)
    n_jca = S("jca", {"ph": phi, "ps": "( N - M ) e. ZZ",
                      "ch": "0 <_ ( N - M )"}, n_zsub, n_mpbird)
    n_el = S("elnn0z", {"N": "( N - M )"})
    root = S("sylibr", {"ph": phi,
                        "ps": "( ( N - M ) e. ZZ /\\ 0 <_ ( N - M ) )",
                        "ch": "( N - M ) e. NN0"}, n_jca, n_el)
    b.add("uznn0sub", "|- ( N e. ( ZZ>= ` M ) -> ( N - M ) e. NN0 )", root)

    # odd nonnegative integers have the 2m+1 witness form
    b.dv = frozenset({("N", "m")})
    phi = "( N e. NN0 /\\ ( ( N + 1 ) / 2 ) e. NN0 )"
    w = "( ( N - 1 ) / 2 )"
    n_nn0o = S("nn0o", {"N": "N"})
    n_cn1 = S("nn0cn", {"A": "N"})
    n_1cn1 = S("ax1cn")
    n_sub = S("subcl", {"A": "N", "B": "1"})
    n_syl1 = S("sylancl", {"ph": "N e. NN0", "ps": "N e. CC", "ch": "1 e. CC",
                           "th": "( N - 1 ) e. CC"}, n_cn1, n_1cn1, n_sub)
    n_2cnd = S("2cnd", {"ph": "N e. NN0"})
    n_a1i = S("a1i", {"ph": "2 =/= 0", "ps": "N e. NN0"}, S("2ne0"))
    n_div = S("divcan2d", {"ph": "N e. NN0", "A": "( N - 1 )", "B": "2"},
              n_syl1, n_2cnd, n_a1i)
    n_ad1 = S("adantr", {"ph": "N e. NN0",
                         "ps": f"( 2 x. {w} ) = ( N - 1 )",
                         "ch": "( ( N + 1 ) / 2 ) e. NN0"}, n_div)
    n_ov1 = S("oveq1d", {"ph": phi, "A": f"( 2 x. {w} )", "B": "( N - 1 )",
                         "C": "1", "F": "+"}, n_ad1)
    n_cn2 = S("nn0cn", {"A": "N"})
    n_1cn2 = S("ax1cn")
    n_np = S("npcan", {"A": "N", "B": "1"})
    n_syl2 = S("sylancl", {"ph": "N e. NN0", "ps": "N e. CC", "ch": "1 e. CC",
                           "th": "( ( N - 1 ) + 1 ) = N"}, n_cn2, n_1cn2, n_np)
    n_ad2 = S("adantr", {"ph": "N e. NN0", "ps": "( ( N - 1 ) + 1 ) = N",
                         "ch": "( ( N + 1 ) / 2 ) e. NN0"}, n_syl2)
    n_tr = S("eqtr2d", {"ph": phi, "A": f"( ( 2 x. {w} ) + 1 )",
                        "B": "( ( N - 1 ) + 1 )", "C": "N"}, n_ov1, n_ad2)
    n_ov2 = S("oveq2", {"A": "m", "B": w, "C": "2", "F": "x."})
    n_ovd = S("oveq1d", {"ph": f"m = {w}", "A": "( 2 x. m )",
                         "B": f"( 2 x. {w} )", "C": "1", "F": "+"}, n_ov2)
    n_eq2 = S("eqeq2d", {"ph": f"m = {w}", "A": "( ( 2 x. m ) + 1 )",
                         "B": f"( ( 2 x. {w} ) + 1 )", "C": "N"}, n_ovd)
    n_rsp = S("rspcev", {"x": "m", "A": w, "B": "NN0",
                         "ph": "N = ( ( 2 x. m ) + 1 )",
                         "ps": f"N = ( ( 2 x. {w} ) + 1 )"}, n_eq2)
    root = S("syl2anc", {"ph": phi, "ps": f"{w} e. NN0",
                         "ch": f"N = ( ( 2 x. {w} ) + 1 )",
                         "th": "E. m e. NN0 N = ( ( 2 x. m ) + 1 )"},
             n_nn0o, n_tr, n_rsp)
    b.add("nn0onn0ex",
          "|- ( ( N e. NN0 /\\ ( ( N + 1 ) / 2 ) e. NN0 ) -> "
          "E. m e. NN0 N = ( ( 2 x. m ) + 1 ) )",
          root, dv=[("m", "N")])

    # deliberately padded proofs for the shortening workflow
    for i, (x, y) in enumerate([(2, 2), (3, 3), (2, 5), (4, 4)], start=1):
        z = x + y
        fact = f"{x}p{y}e{z}"
        root = S("eqtri", {"A": f"( {x} + {y} )", "B": str(z), "C": str(z)},
                 S(fact), S("eqid", {"A": str(z)}))
        b.add(f"padadd{i}", f"|- ( {x} + {y} ) = {z}", root)
    for label, v in [("padidlem", "ta"), ("padthid", "th")]:
        root = S("ax-mp", {"ph": f"( {v} -> {v} )", "ps": f"( {v} -> {v} )"},
                 S("id", {"ph": v}), S("id", {"ph": f"( {v} -> {v} )"}))
        b.add(label, f"|- ( {v} -> {v} )", root)


def main() -> None:
    skip_syn = "--skip-synthetic" in sys.argv
    base = PRELUDE + digit_tables()
    b = Builder(base)
    build_handmade(b)

    if not skip_syn:
        from mmprover.syngen import fixture_theorems
        b.text += "\n$( Synthetically generated arithmetic and ring theorems. $)\n"
        for label, expr, root, fmt in fixture_theorems(b.db, seed=20240501):
            b.add(label, expr, root, fmt=fmt)

    out = Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(exist_ok=True)
    final = b.text
    db = parse_database(final)
    n_ok = 0
    for a in db.provables():
        verify_proof(db, a)
        n_ok += 1
    (out / "miniset.mm").write_text(final)
    digest = hashlib.sha256(final.encode()).hexdigest()
    manifest = {
        "file": "miniset.mm",
        "sha256": digest,
        "statements": len(db.assertions),
        "axioms": sum(1 for a in db.assertions if a.kind == "a"),
        "provable": n_ok,
    }
    (out / "miniset.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote miniset.mm: {len(db.assertions)} statements, "
          f"{n_ok} proved, sha256 {digest[:16]}…")


if __name__ == "__main__":
    main()
