#!/usr/bin/env python3
"""Builds the cxg_py extension module and exercises its main surface."""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "cxg-py"], cwd=ROOT, check=True
    )
    lib = ROOT / "target" / "release" / "libcxg_py.so"
    if not lib.exists():  # macOS
        lib = ROOT / "target" / "release" / "libcxg_py.dylib"
    return lib


def main() -> None:
    lib = build_extension()
    with tempfile.TemporaryDirectory() as td:
        shutil.copy2(lib, Path(td) / "cxg_py.so")
        sys.path.insert(0, td)
        import cxg_py

        # Digit grammars: the lexicalized twin spells out 11 extra symbols
        # per non-zero digit entry and loses the description-length contest.
        g = cxg_py.Grammar.numbers(10)
        lex = g.lexicalize()
        assert g.mode == "constructional" and lex.mode == "lexicalized"
        delta = lex.dl()["lexicon_symbols"] - g.dl()["lexicon_symbols"]
        assert delta == 99, delta
        ratio = lex.dl()["payload_symbols"] / g.dl()["payload_symbols"]
        assert ratio >= 10, ratio
        assert g.interpret("1 7 3 4 1") == ["17341"] == lex.interpret("1 7 3 4 1")

        corpus = [" ".join(str(n)) for n in range(100)]
        cmp = cxg_py.compare(g, lex, corpus)
        assert cmp["verdict"] == "a", cmp
        assert cmp["data_a"] == cmp["data_b"], cmp
        assert cmp["total_a"] < cmp["total_b"], cmp

        # Clause grammars: same classification in both modes.
        m = cxg_py.Grammar.clauses("meetings")
        ml = m.lexicalize()
        sensible = "we meet at 12 with bob at 6_avenue_and_44_street"
        nonsense = "we meet at 12 pm with bob from 5 to 6 pm"
        for grammar in (m, ml):
            assert grammar.accepts(sensible)
            assert not grammar.accepts(nonsense)
            assert grammar.derivations(nonsense) > 0
        assert m.interpret(sensible) == ml.interpret(sensible)

        # Text format round-trips.
        back = cxg_py.Grammar.from_text(g.to_text())
        assert back.to_text() == g.to_text()

        # Bounded enumeration agrees across modes.
        small = cxg_py.Grammar.clauses("small")
        first = small.enumerate(4, limit=5)
        assert len(first) == 5 and all(meanings for _, meanings in first)

        print("smoke test passed")


if __name__ == "__main__":
    main()
