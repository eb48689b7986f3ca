"""Shipped example algebras, bimodules and metrics.

The JSON files next to this module are the canonical fixtures; the builder
functions below regenerate them (``scripts/make_fixtures.py``) and are used
by the tests to cross-check the files.

``NCG_FIXTURES`` overrides the directory the loaders read from.

Short names:

* ``m2``   -- 2x2 matrices over Q(i), conjugate-transpose involution.
* ``m2c2`` -- 2x2 matrices over Q, transpose involution (real form).
* ``t2``   -- upper-triangular 2x2 matrices over Q; the involution swaps
  ``e11`` and ``e22`` and fixes ``e12``.
* ``k2``   -- Q x Q, componentwise.
* ``dual`` -- dual numbers Q[eps]/(eps^2).
* ``n3``   -- Q[x, y]/(x, y)^2; a finite-dimensional stand-in for the
  classic module without connections (see ``n3_quotient``).

The Killing pseudo-metric on ``m2`` uses the traceless representative of
each inner derivation: ``g(ad a, ad b) = tr(a0 b0) 1`` with ``a0 = a - tr(a)/2``.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..algebra import Algebra, Involution, algebra_from_json
from ..field import QQ, QQI, Field

DATA_DIR = Path(__file__).parent / "data"

ALGEBRAS = ("m2", "m2c2", "t2", "k2", "dual", "n3")


def fixture_dir() -> Path:
    env = os.environ.get("NCG_FIXTURES")
    return Path(env) if env else DATA_DIR


def fixture_path(name: str) -> Path:
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        return p
    return fixture_dir() / (name if name.endswith(".json") else name + ".json")


def load_json(name: str) -> dict:
    with open(fixture_path(name)) as fh:
        return json.load(fh)


def load(name: str) -> Algebra:
    return algebra_from_json(load_json(name), name=Path(name).stem)


# ----------------------------------------------------------------------------
# builders


def _tensor(n, entries, K: Field):
    mul = [[[K.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j), prod in entries.items():
        for k, c in prod.items():
            mul[i][j][k] = K(c)
    return tuple(tuple(tuple(c) for c in row) for row in mul)


def _perm_matrix(perm, K: Field):
    n = len(perm)
    return tuple(tuple(K.one if perm[c] == r else K.zero for c in range(n)) for r in range(n))


def matrix_algebra(N: int, K: Field, conjugate: bool, name: str) -> Algebra:
    idx = {(r, c): r * N + c for r in range(N) for c in range(N)}
    entries = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                entries[(a, b)] = {idx[(i, l)]: 1}
    n = N * N
    unit = tuple(K.one if r == c else K.zero for r in range(N) for c in range(N))
    perm = [idx[(c, r)] for r in range(N) for c in range(N)]
    inv = Involution(_perm_matrix(perm, K), conjugate)
    names = tuple(f"e{r + 1}{c + 1}" for r in range(N) for c in range(N))
    return Algebra(K, n, names, unit, _tensor(n, entries, K), inv, name)


def m2() -> Algebra:
    return matrix_algebra(2, QQI, True, "m2")


def m2c2() -> Algebra:
    return matrix_algebra(2, QQ, False, "m2c2")


def t2() -> Algebra:
    # basis e11, e12, e22
    entries = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (1, 2): {1: 1},
        (2, 2): {2: 1},
    }
    inv = Involution(_perm_matrix([2, 1, 0], QQ), False)
    return Algebra(QQ, 3, ("e11", "e12", "e22"), (QQ(1), QQ(0), QQ(1)), _tensor(3, entries, QQ), inv, "t2")


def k2() -> Algebra:
    entries = {(0, 0): {0: 1}, (1, 1): {1: 1}}
    inv = Involution(_perm_matrix([0, 1], QQ), False)
    return Algebra(QQ, 2, ("p1", "p2"), (QQ(1), QQ(1)), _tensor(2, entries, QQ), inv, "k2")


def dual_numbers() -> Algebra:
    entries = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    inv = Involution(_perm_matrix([0, 1], QQ), False)
    return Algebra(QQ, 2, ("1", "eps"), (QQ(1), QQ(0)), _tensor(2, entries, QQ), inv, "dual")


def n3() -> Algebra:
    entries = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    inv = Involution(_perm_matrix([0, 1, 2], QQ), False)
    return Algebra(QQ, 3, ("1", "x", "y"), (QQ(1), QQ(0), QQ(0)), _tensor(3, entries, QQ), inv, "n3")


BUILDERS = {"m2": m2, "m2c2": m2c2, "t2": t2, "k2": k2, "dual": dual_numbers, "n3": n3}


def build(name: str) -> Algebra:
    return BUILDERS[name]()


# bimodule fixtures ------------------------------------------------------------


def t2_twisted():
    """One-dimensional T2-bimodule ``a m b = a22 b11 m``: central, but ``hom(M, A) = 0``."""
    from ..bimodule import character_bimodule

    A = t2()
    chi1 = (1, 0, 0)  # e11 -> 1
    chi2 = (0, 0, 1)  # e22 -> 1
    return character_bimodule(A, chi2, chi1, name="t2_twisted")


def n3_quotient():
    """``A/(x)`` over ``Q[x,y]/(x,y)^2``: spanned by the classes of 1 and y.

    The derivation with ``x -> y`` forces ``0 = D(x) e = y e != 0`` in the
    Leibniz rule, so this module carries no connection.
    """
    from ..bimodule import Bimodule

    A = n3()
    K = QQ
    z, o = K(0), K(1)
    # module basis: e = [1], f = [y];  x acts by 0, y sends e -> f
    I = ((o, z), (z, o))
    X = ((z, z), (z, z))
    Y = ((z, z), (o, z))
    return Bimodule(A, 2, (I, X, Y), (I, X, Y), None, "n3_quotient")


def killing_values(A: Algebra):
    """Matrix of ``tr(a0 b0) 1`` on the Der basis of a matrix algebra fixture."""
    from .. import exactlin as el

    N = int(round(A.dim ** 0.5))
    tr_idx = [r * N + r for r in range(N)]

    def tr(v):
        return sum((v[i] for i in tr_idx), A.zero)

    reps = []
    for x in A.der.inner_preimages:
        t = tr(x) / N
        reps.append(el.vsub(x, el.vscale(t, A.unit)))
    return tuple(tuple(el.vscale(tr(A.multiply(a, b)), A.unit) for b in reps) for a in reps)
