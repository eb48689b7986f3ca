"""Acceptance criteria 1-11, each at zero tolerance (exact arithmetic).

Every test records a PASS/FAIL line that the session prints at the end.
"""

import random
import shutil
import subprocess
import sys
import time
from itertools import combinations, permutations

from conftest import record

from ncg import connection as C
from ncg import exactlin as el
from ncg import fixtures as fx
from ncg import metric as Mt
from ncg.algebra import is_class_Cinf0
from ncg.bimodule import canonical_map_and_flags, derivation_zmodule, dual_zmodule, hom_AA, regular_bimodule
from ncg.forms import Form, Variant, calculus, derivation_duality, dimension_table, minimal_forms, omega1_minimal, omega1_underline
from ncg.suites import SuiteConfig


def _unit(A, k, n):
    return tuple(A.one if i == k else A.zero for i in range(n))


def test_c01_structure_recovery():
    m2, t2, k2 = fx.load("m2"), fx.load("t2"), fx.load("k2")
    got = {
        "m2": (m2.center_space.dim, m2.der.dim, len(m2.der.outer_reps)),
        "t2": (t2.center_space.dim, t2.der.dim, len(t2.der.outer_reps)),
        "k2": k2.der.dim,
    }
    ok = got == {"m2": (1, 3, 0), "t2": (1, 2, 0), "k2": 0} and is_class_Cinf0(m2)
    assert record(1, "structure recovery (Z, Der, Out)", ok, str(got))


def test_c02_form_tables():
    A = fx.load("m2")
    under = dimension_table(A, 3, Variant.UNDERLINE)
    mins = minimal_forms(A, 3)
    calc = calculus(A)
    same = all(mins[n].space == calc.underline(n) for n in range(4))
    out = dimension_table(A, 3, Variant.OUT_UNDERLINE)
    ok = under == [4, 12, 12, 4] and same and out == [1, 0, 0, 0]
    assert record(2, "form tables on m2, minimal = Z-multilinear", ok, f"{under}, out {out}")


def _cartan_on_basis(A):
    calc = calculus(A)
    D = A.der
    d = D.dim
    units = [_unit(A, a, d) for a in range(d)]
    for n in range(0, d + 1):
        space = calc.underline(n)
        for v in space.basis:
            w = Form(n, v, A.dim)
            dw = calc.differential(w)
            if not calc.differential(dw).is_zero():
                return False
            for X in units:
                LX = calc.lie(X, w)
                iw = calc.interior(X, w)
                if n > 0 and LX != calc.differential(iw) + calc.interior(X, dw):
                    return False
                if n == 0 and LX != calc.interior(X, dw):
                    return False
                for Y in units:
                    XY = D.bracket_coords(X, Y)
                    if n > 0 and calc.lie(X, calc.interior(Y, w)) - calc.interior(Y, LX) != calc.interior(XY, w):
                        return False
                    if calc.lie(X, calc.lie(Y, w)) - calc.lie(Y, LX) != calc.lie(XY, w):
                        return False
    return True


def _star_on_basis(A):
    calc = calculus(A)
    d = A.der.dim
    bases = {n: [Form(n, v, A.dim) for v in calc.underline(n).basis] for n in range(d + 1)}
    for k in bases:
        for a in bases[k]:
            if calc.differential(calc.star(a)) != calc.star(calc.differential(a)):
                return False
            for l in bases:
                if k + l > d:
                    continue
                for b in bases[l][:6]:
                    sign = -1 if (k * l) % 2 else 1
                    if calc.star(calc.wedge(a, b)) != calc.wedge(calc.star(b), calc.star(a)).scaled(sign):
                        return False
    return True


def test_c03_ce_identities():
    results = {}
    for name in fx.ALGEBRAS:
        A = fx.load(name)
        results[name] = _cartan_on_basis(A) and (A.involution is None or _star_on_basis(A))
    ok = all(results.values())
    assert record(3, "d^2 = 0, Cartan and star relations on every fixture basis", ok, str(results))


def test_c04_affine_structure():
    rng = random.Random(SuiteConfig.seed)
    bad = []
    for name in fx.ALGEBRAS:
        A = fx.load(name)
        for T in (regular_bimodule(A), omega1_underline(A), derivation_zmodule(A)):
            space = C.find_connections(A, T)
            if not space:
                bad.append((name, T.name, "infeasible"))
                continue
            samples = [space.particular] + [space.random(rng) for _ in range(4)]
            if not all(C.is_connection(s) for s in samples):
                bad.append((name, T.name, "sample fails"))
            if not all(C.is_connection(space.particular + g) for g in space.model_basis):
                bad.append((name, T.name, "model element fails"))
            if not all(space.model_contains(a.difference(b)) for a, b in combinations(samples, 2)):
                bad.append((name, T.name, "difference outside model"))
    assert record(4, "connection axioms and affine structure on A, Omega1, Der", not bad, str(bad) if bad else "")


def test_c05_torsion_formulas():
    A = fx.load("m2")
    O = omega1_underline(A)
    calc = calculus(A)
    D = A.der
    ci = C.canonical_inner_connection(A, O)
    L = C.lie_connection(A, 1)
    half = A.one / 2
    Tci, TL = C.torsion_linear(ci), C.torsion_linear(L)
    ok_ci = ok_L = True
    pre = D.inner_preimages
    for k in range(O.dim):
        w = O.realization.form(_unit(A, k, O.dim))
        for a, b in combinations(range(D.dim), 2):
            # -w(ad [x, y]) with x, y preimages of the basis derivations
            adxy = D.coords(A.ad(A.commutator(pre[a], pre[b])))
            if calc.value(Tci.apply(w), (a, b)) != el.vscale(-1, calc.value_at(w, [adxy])):
                ok_ci = False
            if calc.value(TL.apply(w), (a, b)) != calc.value_at(w, [D.structure_constants[a][b]]):
                ok_L = False
    avg = C.torsion_linear(C.combine([half, half], [ci, L])).is_zero
    flat = C.curvature(ci).is_flat and C.curvature(L).is_flat
    ok = ok_ci and ok_L and avg and flat
    assert record(5, "torsion of canonical inner and Lie connections, average torsion-free, both flat", ok,
                  f"inner {ok_ci}, lie {ok_L}, average {avg}, flat {flat}")


def test_c06_bianchi_100_samples():
    A = fx.load("m2")
    space = C.find_connections(A, omega1_underline(A))
    rng = random.Random(SuiteConfig.seed)
    n_ok = 0
    for _ in range(100):
        nab = space.random(rng)
        if C.bianchi_check(nab).passed:
            n_ok += 1
    assert record(6, "Bianchi on 100 seeded model samples on m2 one-forms", n_ok == 100, f"{n_ok}/100")


def test_c07_one_form_duality():
    ok = True
    details = []
    for name in ("m2", "t2"):
        A = fx.load(name)
        rep = derivation_duality(A)
        Om1, OmU = omega1_minimal(A), omega1_underline(A)
        H = hom_AA(A, Om1, regular_bimodule(A))
        DD = dual_zmodule(A, derivation_zmodule(A))
        explicit = H.dim == A.der.dim and DD.realization.space == OmU.realization.space
        refl = canonical_map_and_flags(A, OmU).reflexive
        ok = ok and rep.passed and explicit and refl
        details.append(f"{name}: hom {H.dim} = Der {A.der.dim}, dual {DD.dim} = {OmU.dim}")
    assert record(7, "hom(Omega1, A) = Der and Der^*A = underline Omega1, separated, reflexive", ok, "; ".join(details))


def test_c08_dual_connection_round_trip():
    ok = True
    rng = random.Random(SuiteConfig.seed)
    for name in ("m2", "t2", "dual", "k2"):
        A = fx.load(name)
        O = omega1_underline(A)
        conns = [C.canonical_connection(A), C.find_connections(A, O).random(rng), C.find_connections(A, derivation_zmodule(A)).random(rng)]
        for nab in conns:
            if not C.dual_compatibility_report(nab).passed:
                ok = False
            if canonical_map_and_flags(A, nab.target).reflexive and not C.double_dual_report(nab).passed:
                ok = False
    assert record(8, "dual connections: compatibility on basis pairs and double dual = original", ok)


def test_c09_levi_civita():
    A = fx.load("m2")
    g = Mt.pseudo_metric_from_json(A, fx.load_json("killing"))
    lc = Mt.levi_civita(A, g)
    assert lc, lc.reason
    nab = lc.connection
    D = A.der
    d = D.dim
    half, quarter = A.one / 2, A.one / 4
    sc = D.structure_constants
    formula = all(nab.apply(a, _unit(A, b, d)) == el.vscale(half, sc[a][b]) for a in range(d) for b in range(d))
    R = C.curvature(nab)
    curv = all(
        el.matvec(R.pair(a, b), _unit(A, c, d), A.zero) == el.vscale(-quarter, D.bracket_coords(sc[a][b], _unit(A, c, d)))
        for a, b, c in permutations(range(d), 3)
    ) and all(el.is_zero(R.pair(a, a)) for a in range(d))
    by = {c.name: c.passed for c in lc.report.checks}
    flags = all(by[k] for k in ("unique (g_*# injective)", "torsion-free", "metric compatible", "real"))
    h = Mt.derivation_coords(A, A.element(e11=1, e22=-1))
    e = Mt.derivation_coords(A, A.element(e12=1))
    f = Mt.derivation_coords(A, A.element(e21=1))
    spot = el.matvec(R.at(h, e), f, A.zero) == el.vscale(-half, h)
    ok = formula and curv and flags and spot and lc.report.passed
    assert record(9, "Levi-Civita of the Killing metric is 1/2[X,Y], R = -1/4[[X,Y],Z]", ok,
                  f"formula {formula}, curvature {curv}, flags {flags}, spot {spot}")


def test_c10_sigma():
    A = fx.load("m2")
    g = Mt.pseudo_metric_from_json(A, fx.load_json("killing"))
    s = Mt.sigma(A)
    inv = el.matmul(s.matrix, s.matrix, A.zero) == el.identity(s.dim, A.one, A.zero)
    fixed = s.fixed_space() == Mt.symmetric_forms(A)
    rep = Mt.sigma_checks(A, g)
    dims = (rep.results["tensor_dim"], rep.results["image_dim"], rep.results["bilinear_dim"])
    ok = inv and fixed and rep.passed and dims == (36, 36, 36)
    assert record(10, "sigma^2 = id, fixed space = symmetric forms, 36 = 36, Killing sigma-invariant", ok, f"dims {dims}")


def test_c11_end_to_end():
    exe = shutil.which("ncg")
    cmd = [exe] if exe else [sys.executable, "-m", "ncg.cli"]
    t0 = time.monotonic()
    proc = subprocess.run(cmd + ["verify", "--suite", "all"], capture_output=True, text=True, timeout=600)
    dt = time.monotonic() - t0
    ok = proc.returncode == 0 and dt < 300
    assert record(11, "ncg verify --suite all exits 0 in under 5 minutes", ok, f"exit {proc.returncode}, {dt:.1f}s"), proc.stdout[-2000:]
