import pytest

from ncg import connection as C
from ncg import exactlin as el
from ncg import fixtures as fx
from ncg import metric as Mt
from ncg.algebra import PreconditionError, UnsupportedOperation
from ncg.bimodule import regular_bimodule


def product_inner(A, scale=None):
    M = regular_bimodule(A)
    vals = tuple(
        tuple(A.multiply(A.basis_vector(p), A.basis_vector(q)) for q in range(A.dim)) for p in range(A.dim)
    )
    if scale is not None:
        vals = tuple(tuple(el.vscale(scale, v) for v in row) for row in vals)
    return M, Mt.InnerProduct(A, M, vals)


def sl2(A):
    return {
        "h": Mt.derivation_coords(A, A.element(e11=1, e22=-1)),
        "e": Mt.derivation_coords(A, A.element(e12=1)),
        "f": Mt.derivation_coords(A, A.element(e21=1)),
    }


def test_product_is_real_inner_product(m2):
    M, g = product_inner(m2)
    rep = Mt.validate_inner_product(m2, M, g)
    assert rep.passed, rep.lines()
    assert rep.results["nondegenerate"] is True
    assert rep.results["positivity"] == "not evaluated"


def test_scaling_by_i_breaks_reality(m2):
    M, g = product_inner(m2, m2.field.i)
    rep = Mt.validate_inner_product(m2, M, g)
    names = [c.name for c in rep.failures]
    # h = g(m*, n) inherits the fault through (h(m,n))* = h(n,m)
    assert names == ["reality (g(m,n))* = g(n*, m*)", "right-hermitian identities of h"]
    assert "violated at basis pairs" in rep.failures[0].detail


def test_inner_product_needs_involution(t2):
    from ncg.bimodule import Bimodule

    A = regular_bimodule(t2)
    bare = Bimodule(t2, A.dim, A.left, A.right, None, "bare")
    _, g = product_inner(t2)
    with pytest.raises(UnsupportedOperation):
        Mt.validate_inner_product(t2, bare, g)


def test_hermitian_round_trip(m2):
    _, g = product_inner(m2)
    h = g.hermitian()
    assert h.inner_product().values == g.values
    # h(a, b) = a* b on the regular bimodule
    a, b = m2.element(e12=1), m2.element(e12=1)
    assert h.value(a, b) == m2.multiply(m2.star(a), b)


def test_one_form_inner_product_from_killing(m2):
    g = Mt.killing_metric(m2)
    gi = Mt.dual_inner_product(m2, el.inverse(g.scalar_gram))
    rep = Mt.validate_inner_product(m2, gi.module, gi)
    assert rep.passed and rep.results["nondegenerate"]
    _, gs = Mt.gsharp(gi)
    assert el.rank(el.transpose(gs)) == 12


def test_compose_with_regular_recovers_module(t2):
    # E = A with h(a, b) = a* b: A (x)_A M = M and h reduces to h_M
    A = t2
    _, gA = product_inner(A)
    hA = gA.hermitian()
    comp = Mt.compose_hermitian(hA, hA)
    assert comp.module.dim == A.dim
    T = comp.module.realization
    for p in range(A.dim):
        for q in range(A.dim):
            lhs = comp.value(T.class_of(A.unit, A.basis_vector(p)), T.class_of(A.unit, A.basis_vector(q)))
            assert lhs == hA.values[p][q]


def test_compose_associative(t2):
    _, g = product_inner(t2)
    h = g.hermitian()
    left = Mt.compose_hermitian(Mt.compose_hermitian(h, h), h)
    right = Mt.compose_hermitian(h, Mt.compose_hermitian(h, h))
    Tl, Tr = left.module.realization, right.module.realization
    a = [t2.basis_vector(i) for i in range(3)]
    for x in a:
        for y in a:
            u = Tl.class_of(Tl.first.realization.class_of(t2.unit, x), y)
            v = Tr.class_of(t2.unit, Tr.second.realization.class_of(x, y))
            assert left.value(u, u) == right.value(v, v)


def test_killing_gram_matches_trace_form(m2):
    g = Mt.killing_metric(m2)
    b = sl2(m2)
    one = tuple(m2.unit)
    assert g.value(b["h"], b["h"]) == el.vscale(m2.field(2), one)
    assert g.value(b["e"], b["f"]) == one
    assert el.is_zero(g.value(b["e"], b["e"])) and el.is_zero(g.value(b["h"], b["e"]))
    assert Mt.validate_pseudo_metric(m2, g).passed


def test_killing_fixture_file_matches_builder(m2):
    assert Mt.pseudo_metric_from_json(m2, fx.load_json("killing")).values == Mt.killing_metric(m2).values


def test_zero_metric_is_degenerate(m2):
    zero = Mt.PseudoMetric(m2, tuple(tuple(m2.zero_vector() for _ in range(3)) for _ in range(3)))
    rep = Mt.validate_pseudo_metric(m2, zero)
    assert [c.name for c in rep.failures] == ["nondegenerate (g_*# injective)"]
    with pytest.raises(PreconditionError):
        Mt.levi_civita(m2, zero)


@pytest.mark.parametrize("name", ["m2", "m2c2"])
def test_levi_civita_is_half_bracket(name):
    A = fx.load(name)
    lc = Mt.levi_civita(A, Mt.killing_metric(A))
    assert lc and lc.report.passed
    assert Mt.half_bracket_report(lc.connection).passed
    b = sl2(A)
    assert el.matvec(lc.connection.along(b["h"]), b["e"], A.zero) == b["e"]


def test_levi_civita_curvature_spot_value(m2):
    lc = Mt.levi_civita(m2, Mt.killing_metric(m2))
    b = sl2(m2)
    R = C.curvature(lc.connection)
    assert el.matvec(R.at(b["h"], b["e"]), b["f"], m2.zero) == el.vscale(-m2.one / 2, b["h"])


def test_levi_civita_on_k2_is_vacuous(k2):
    lc = Mt.levi_civita(k2, Mt.PseudoMetric(k2, ()))
    assert lc and lc.connection.coefficients == ()


def test_sigma_on_m2(m2):
    g = Mt.killing_metric(m2)
    rep = Mt.sigma_checks(m2, g)
    assert rep.passed
    assert rep.results["tensor_dim"] == rep.results["bilinear_dim"] == 36
    s = Mt.sigma(m2)
    assert el.matmul(s.matrix, s.matrix, m2.zero) == el.identity(s.dim, m2.one, m2.zero)
    assert s.fixed_space() == Mt.symmetric_forms(m2)


@pytest.mark.parametrize("name,equal", [("t2", True), ("dual", False), ("n3", False)])
def test_sigma_equality_is_a_finding(name, equal):
    A = fx.load(name)
    rep = Mt.sigma_checks(A, expect_equality=False)
    assert rep.passed
    assert rep.results["tensor_equality"] is equal


def test_sigma_fixed_dimension(m2c2):
    # symmetric bilinear forms on a 3-dim space with values in the 4-dim algebra
    assert Mt.symmetric_forms(m2c2).dim == 6 * 4
