import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import connection as C
from ncg import exactlin as el
from ncg import fixtures as fx
from ncg.algebra import PreconditionError
from ncg.bimodule import bimodule_from_json, character_bimodule, derivation_zmodule, regular_bimodule
from ncg.forms import calculus, omega1_underline

from oracle import bimodule_endomorphism_dim

MODEL_DIMS = {
    # name: (A, Omega1, Der)
    "m2": (3, 27, 27),
    "m2c2": (3, 27, 27),
    "t2": (2, 8, 8),
    "k2": (0, 0, 0),
    "dual": (1, 1, 1),
    "n3": (8, 256, 64),
}


def targets(A):
    return (regular_bimodule(A), omega1_underline(A), derivation_zmodule(A))


@pytest.mark.parametrize("name", fx.ALGEBRAS)
def test_model_dimensions(name):
    A = fx.load(name)
    dims = tuple(C.find_connections(A, T).model_dim for T in targets(A))
    assert dims == MODEL_DIMS[name]


@pytest.mark.parametrize("name", ["m2c2", "t2"])
def test_model_dimension_oracle(name):
    # trivial center: model space = Der (x) End_AA(M), counted independently
    A = fx.load(name)
    for M in targets(A)[:2]:
        assert C.find_connections(A, M).model_dim == A.der.dim * bimodule_endomorphism_dim(M)


def test_affine_structure(any_algebra):
    A = any_algebra
    rng = random.Random(7)
    for T in targets(A):
        space = C.find_connections(A, T)
        a, b = space.random(rng), space.random(rng)
        assert C.is_connection(a) and C.is_connection(b)
        assert space.model_contains(a.difference(b))
        assert space.contains(a)


def test_canonical_connections_are_found(m2, t2):
    for A in (m2, t2):
        assert C.find_connections(A, regular_bimodule(A)).contains(C.canonical_connection(A))
        O = omega1_underline(A)
        assert C.find_connections(A, O).contains(C.canonical_inner_connection(A, O))


def test_canonical_inner_on_A_is_canonical(t2):
    ci = C.canonical_inner_connection(t2, regular_bimodule(t2))
    assert ci.coefficients == C.canonical_connection(t2).coefficients


def test_empty_connection_on_k2(k2):
    space = C.find_connections(k2, derivation_zmodule(k2))
    assert space and space.model_dim == 0 and space.particular.coefficients == ()


def test_noncentral_target_rejected(k2):
    M = character_bimodule(k2, (1, 0), (0, 1))
    with pytest.raises(PreconditionError):
        C.find_connections(k2, M)


def test_outer_derivations_block_canonical_inner(dual):
    with pytest.raises(PreconditionError):
        C.canonical_inner_connection(dual, regular_bimodule(dual))


def test_lie_needs_trivial_center(dual):
    with pytest.raises(PreconditionError):
        C.lie_connection(dual, 1)


def test_no_connection_on_quotient_module(n3):
    M = bimodule_from_json(n3, fx.load_json("n3_quotient"))
    res = C.find_connections(n3, M)
    assert not res
    assert res.equation.axiom in ("left Leibniz", "right Leibniz")
    assert res.to_json()["status"] == "infeasible"


def test_validate_names_failing_axiom(m2):
    can = C.canonical_connection(m2)
    I = el.identity(4, m2.one, m2.zero)
    # adding a bimodule endomorphism keeps a connection
    assert C.is_connection(can + (I, el.zeros(4, 4, m2.zero), el.zeros(4, 4, m2.zero)))
    # left multiplication by e12 commutes with the right action only
    shift = (m2.left(m2.element(e12=1)), el.zeros(4, 4, m2.zero), el.zeros(4, 4, m2.zero))
    rep = C.validate_connection(can + shift)
    assert [c.name for c in rep.failures] == ["left Leibniz"]


def test_flat_examples(m2):
    O = omega1_underline(m2)
    assert C.curvature(C.canonical_connection(m2)).is_flat
    ci, L = C.canonical_inner_connection(m2, O), C.lie_connection(m2, 1)
    assert C.curvature(ci).is_flat and C.curvature(L).is_flat
    assert ci.coefficients != L.coefficients
    assert C.lie_connection(m2, 0).coefficients == m2.der.basis
    diag = C.gauge_diagnostics(ci, L)
    assert diag["gauge_equivalence"] == "not decided" and not diag["difference_is_zero"]


@given(seed=st.integers(0, 10**6))
@settings(max_examples=10, deadline=None)
def test_bianchi_and_curvature_invariants(seed):
    A = fx.load("m2")
    nab = C.find_connections(A, omega1_underline(A)).random(random.Random(seed))
    R = C.curvature(nab)
    assert C.validate_curvature(R).passed
    assert C.bianchi_check(nab, R).passed


def test_bianchi_nontrivial_center(n3):
    nab = C.find_connections(n3, derivation_zmodule(n3)).random(random.Random(3))
    R = C.curvature(nab)
    assert C.validate_curvature(R).passed and C.bianchi_check(nab, R).passed


def test_tensor_constructions(m2):
    O = omega1_underline(m2)
    ci = C.canonical_inner_connection(m2, O)
    t = C.tensor_over_A(ci, ci)
    assert t.dim == 36 and C.is_connection(t) and C.curvature(t).is_flat
    can = C.canonical_connection(m2)
    tz = C.tensor_over_Z(can, can)
    assert C.is_connection(tz) and C.curvature(tz).is_flat
    ta = C.tensor_algebra(can, 2)
    assert ta.leibniz_report().passed
    assert ta.degrees[0].coefficients == m2.der.basis


def test_gauge_transform(m2):
    can = C.canonical_connection(m2)
    I = el.identity(4, m2.one, m2.zero)
    assert C.gauge_transform(can, I).coefficients == can.coefficients
    two = el.scale(m2.field(2), I)
    assert C.gauge_transform(can, two).coefficients == can.coefficients
    with pytest.raises(PreconditionError):
        C.gauge_transform(can, el.zeros(4, 4, m2.zero))
    with pytest.raises(PreconditionError):
        # left multiplication by e12 is not a bimodule endomorphism
        C.gauge_transform(can, m2.left(m2.element(e12=1)))


def test_induced_edge_cases(t2):
    O = omega1_underline(t2)
    nab = C.find_connections(t2, O).particular
    full = el.Subspace.full(O.dim, t2.one, t2.zero)
    r, q = C.induced(nab, full)
    assert r.coefficients == nab.coefficients and q.dim == 0
    r, q = C.induced(nab, el.Subspace.zero_space(O.dim, t2.zero))
    assert r.dim == 0 and q.coefficients == nab.coefficients


def test_extension_degree_zero(m2):
    O = omega1_underline(m2)
    nab = C.find_connections(m2, O).random(random.Random(1))
    from ncg.forms import Form

    m = O.basis_vector(5)
    ext = C.extend_to_forms(nab, Form(0, m, O.dim))
    for a in range(3):
        assert C.module_calculus(nab).value(ext, (a,)) == nab.apply(a, m)


def test_dual_connections(m2, t2):
    for A in (m2, t2):
        O = omega1_underline(A)
        for nab in (C.canonical_connection(A), C.canonical_inner_connection(A, O)):
            assert C.dual_compatibility_report(nab).passed
            assert C.double_dual_report(nab).passed
    dual_can = C.dual_connection(C.canonical_connection(m2))
    assert dual_can.dim == 1 and all(el.is_zero(c) for c in dual_can.coefficients)


def test_torsion_formulas(m2):
    O = omega1_underline(m2)
    calc = calculus(m2)
    D = m2.der
    ci, L = C.canonical_inner_connection(m2, O), C.lie_connection(m2, 1)
    Tci, TL = C.torsion_linear(ci), C.torsion_linear(L)
    half = m2.one / 2
    assert C.torsion_linear(C.combine([half, half], [ci, L])).is_zero
    for k in range(O.dim):
        w = O.realization.form(O.basis_vector(k))
        for a in range(3):
            for b in range(a + 1, 3):
                wxy = calc.value_at(w, [D.structure_constants[a][b]])
                assert calc.value(TL.apply(w), (a, b)) == wxy
                assert calc.value(Tci.apply(w), (a, b)) == el.vscale(-1, wxy)
    assert Tci.report.passed and TL.report.passed


def test_torsion_on_der(m2):
    Der = derivation_zmodule(m2)
    zero = C.Connection(m2, Der, tuple(el.zeros(3, 3, m2.zero) for _ in range(3)))
    assert C.is_connection(zero)
    T = C.torsion_on_der(zero)
    D = m2.der
    assert T.values[(0, 1)] == el.vscale(-1, D.structure_constants[0][1])
    assert C.torsion_cross_check(zero).passed


def test_reality(m2):
    O = omega1_underline(m2)
    assert C.is_real_connection(C.canonical_inner_connection(m2, O))
    assert C.is_real_connection(C.canonical_connection(m2))


def test_connection_json_roundtrip(m2):
    O = omega1_underline(m2)
    nab = C.find_connections(m2, O).random(random.Random(5))
    d = json.loads(json.dumps(nab.to_json()))
    assert C.connection_from_json(m2, O, d).coefficients == nab.coefficients
