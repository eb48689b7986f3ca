#!/usr/bin/env python3
"""Print structure counts, form dimensions and connection model dimensions for every fixture."""

from __future__ import annotations

import argparse

from ncg import connection as C
from ncg import fixtures as fx
from ncg.bimodule import derivation_zmodule, regular_bimodule
from ncg.forms import Variant, dimension_table, omega1_underline


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--algebras", nargs="+", default=list(fx.ALGEBRAS))
    args = ap.parse_args()
    for name in args.algebras:
        A = fx.load(name)
        D = A.der
        print(f"{name}: dim {A.dim}, Z {A.center_space.dim}, Der {D.dim}, Int {D.inner.dim}, Out {len(D.outer_reps)}")
        for v in Variant:
            print(f"  {v.value:14s}", *dimension_table(A, args.max_degree, v))
        models = []
        for label, T in (("A", regular_bimodule(A)), ("Omega1", omega1_underline(A)), ("Der", derivation_zmodule(A))):
            space = C.find_connections(A, T)
            models.append(f"{label} {space.model_dim if space else 'none'}")
        print("  connection model dims:", ", ".join(models))


if __name__ == "__main__":
    main()
