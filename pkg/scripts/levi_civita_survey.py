#!/usr/bin/env python3
"""Try the Levi-Civita solver on random scalar pseudo-metrics and tabulate outcomes.

A scalar pseudo-metric is ``g(X_a, X_b) = G_ab c`` for a symmetric invertible
rational matrix ``G`` and a fixed algebra element ``c`` (the unit by default,
``--value e11=1,e22=2`` otherwise).  It is Z-bilinear whenever the center is
trivial.  Non-central ``c`` typically leaves the Koszul covectors outside the
image of ``g_*#``, so no Levi-Civita connection exists.
"""

from __future__ import annotations

import argparse
import json
import random
import re
from collections import Counter

from ncg import exactlin as el
from ncg import fixtures as fx
from ncg import metric as Mt
from ncg.algebra import PreconditionError


def random_gram(A, rng, bound=3):
    d = A.der.dim
    while True:
        G = [[A.zero] * d for _ in range(d)]
        for a in range(d):
            for b in range(a, d):
                G[a][b] = G[b][a] = A.field(rng.randint(-bound, bound))
        if el.rank(G) == d:
            return G


def scalar_metric(A, G, value=None):
    u = tuple(A.unit) if value is None else value
    return Mt.PseudoMetric(A, tuple(tuple(el.vscale(G[a][b], u) for b in range(len(G))) for a in range(len(G))))


def parse_value(A, text):
    if not text:
        return None
    coeffs = dict(kv.split("=") for kv in text.split(","))
    return A.element(**{k: A.field.parse(v) for k, v in coeffs.items()})


def survey(name: str, trials: int, seed: int, value: str = "") -> Counter:
    A = fx.load(name)
    rng = random.Random(seed)
    c = parse_value(A, value)
    out = Counter()
    for _ in range(trials):
        g = scalar_metric(A, random_gram(A, rng), c)
        try:
            lc = Mt.levi_civita(A, g)
        except PreconditionError:
            out["degenerate"] += 1
            continue
        if not lc:
            out["none: " + re.sub(r"for \(\d+,\d+\) ", "", lc.reason)] += 1
        elif lc.report.passed:
            out["unique, all checks pass"] += 1
        else:
            failed = ", ".join(c.name for c in lc.report.failures)
            out[f"unique, fails {failed}"] += 1
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algebras", nargs="+", default=["m2c2", "t2"])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--value", default="", help="metric values as a multiple of this element, e.g. e11=1,e22=2")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    table = {name: dict(survey(name, args.trials, args.seed, args.value)) for name in args.algebras}
    if args.json:
        print(json.dumps(table, indent=1, sort_keys=True))
        return
    for name, counts in table.items():
        for outcome, n in sorted(counts.items()):
            print(f"{name:6s} {n:4d}  {outcome}")


if __name__ == "__main__":
    main()
