#!/usr/bin/env python3
"""Regenerate the shipped JSON fixtures from the builders in ``ncg.fixtures``."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from ncg import fixtures as fx
from ncg.algebra import algebra_to_json, validate_algebra
from ncg.bimodule import bimodule_to_json, validate_bimodule
from ncg.metric import killing_metric, validate_pseudo_metric


def write(path: Path, doc: dict) -> None:
    # one top-level key per line keeps the files diffable without exploding the tensors
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    path.write_text("{\n" + body + "\n}\n")
    print(f"wrote {path}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=fx.DATA_DIR)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for name in fx.ALGEBRAS:
        A = fx.build(name)
        rep = validate_algebra(A)
        assert rep.passed, rep.lines()
        write(args.out / f"{name}.json", algebra_to_json(A))

    for name, builder in (("t2_twisted", fx.t2_twisted), ("n3_quotient", fx.n3_quotient)):
        M = builder()
        assert validate_bimodule(M.algebra, M).passed
        doc = bimodule_to_json(M)
        doc["algebra"] = M.algebra.name
        write(args.out / f"{name}.json", doc)

    A = fx.m2()
    g = killing_metric(A)
    assert validate_pseudo_metric(A, g).passed
    doc = g.to_json()
    doc["algebra"] = "m2"
    doc["convention"] = "g(ad a, ad b) = tr(a0 b0) 1 with a0 = a - tr(a)/2 the traceless representative"
    write(args.out / "killing.json", doc)


if __name__ == "__main__":
    main()
