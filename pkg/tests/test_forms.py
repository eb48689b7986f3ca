import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import exactlin as el
from ncg import fixtures as fx
from ncg.algebra import UnsupportedOperation
from ncg.forms import (
    Form,
    Variant,
    calculus,
    dimension_table,
    element_form,
    form_from_json,
    minimal_forms,
    omega1_underline,
    out_forms,
    underline_forms,
)
from ncg.metric import derivation_coords

SETTINGS = settings(max_examples=20, deadline=None)
coeffs = st.lists(st.integers(-3, 3), min_size=64, max_size=64)


def random_form(A, n, cs, underline=True):
    calc = calculus(A)
    space = calc.underline(n) if underline else calc.ce_space(n)
    v = space.from_coords([A.field(c) for c in cs[: space.dim]])
    return Form(n, v, A.dim)


def test_dimension_tables():
    m2 = fx.load("m2")
    assert dimension_table(m2, 4, Variant.UNDERLINE) == [4, 12, 12, 4, 0]
    assert dimension_table(m2, 4, Variant.MINIMAL) == [4, 12, 12, 4, 0]
    assert dimension_table(m2, 4, Variant.OUT_UNDERLINE) == [1, 0, 0, 0, 0]
    assert dimension_table(fx.load("k2"), 4, Variant.UNDERLINE) == [2, 0, 0, 0, 0]
    assert dimension_table(fx.load("t2"), 3, Variant.UNDERLINE) == [3, 6, 3, 0]
    assert dimension_table(fx.load("t2"), 3, Variant.MINIMAL) == [3, 2, 0, 0]


def test_underline_is_all_cochains_for_trivial_center(m2):
    calc = calculus(m2)
    assert underline_forms(m2, 1).dim == 12 == calc.size(1)
    assert underline_forms(m2, 4).dim == 0


def test_inclusions(any_algebra):
    A = any_algebra
    calc = calculus(A)
    mins = minimal_forms(A, 3)
    assert mins[0].dim == A.dim
    for n in range(4):
        assert mins[n].space.is_subspace_of(calc.underline(n))
        om = out_forms(A, n, Variant.OUT_MINIMAL).space
        ou = out_forms(A, n, Variant.OUT_UNDERLINE).space
        assert om.is_subspace_of(ou)
        assert om == el.intersect(mins[n].space, ou)


def test_commutative_out_forms_are_everything(k2, dual):
    for A in (k2, dual):
        calc = calculus(A)
        for n in range(3):
            assert out_forms(A, n).space == calc.underline(n)


def test_exact_form_value(m2):
    calc = calculus(m2)
    a = m2.element(e11=1)
    e = derivation_coords(m2, m2.element(e12=1))
    assert calc.value_at(calc.exact(a), [e]) == m2.element(e12=-1)
    assert calc.exact(m2.unit).is_zero()


def test_wedge_of_exact_forms(m2):
    calc = calculus(m2)
    a, b = m2.element(e11=1), m2.element(e12=1)
    hx, ex = m2.element(e11=1, e22=-1), m2.element(e12=1)
    h, e = derivation_coords(m2, hx), derivation_coords(m2, ex)
    got = calc.value_at(calc.wedge(calc.exact(a), calc.exact(b)), [h, e])
    c = m2.commutator
    oracle = el.vsub(m2.multiply(c(hx, a), c(ex, b)), m2.multiply(c(ex, a), c(hx, b)))
    assert got == oracle == m2.zero_vector()


def test_degree_zero_wedge_is_multiplication(m2):
    calc = calculus(m2)
    a = element_form(m2, m2.element(e12=1))
    w = calc.exact(m2.element(e21=1))
    prod = calc.wedge(a, w)
    for k in range(3):
        assert calc.value(prod, (k,)) == m2.multiply(a.values, calc.value(w, (k,)))


def test_interior_on_dual_basis_form(m2):
    calc = calculus(m2)
    D = m2.der
    basis = [derivation_coords(m2, m2.element(**kw)) for kw in ({"e11": 1, "e22": -1}, {"e12": 1}, {"e21": 1})]
    inv = el.inverse(el.transpose(basis))
    # theta(X_a) = (coefficient of ad h in X_a) * 1
    theta = calc.from_function(1, lambda t: el.vscale(inv[0][t[0]], m2.unit))
    assert calc.interior(basis[0], theta).values == tuple(m2.unit)
    assert calc.interior(basis[1], theta).is_zero()
    assert calc.interior(basis[0], element_form(m2, m2.unit)).degree == -1
    assert D.dim == 3


def test_lie_matrix_factorizes(m2):
    # on Omega1 = A (x) Der^*: L_X = X (x) 1 - 1 (x) ad_X^T, Der index outermost
    calc = calculus(m2)
    D = m2.der
    O = omega1_underline(m2)
    n = m2.dim
    I_n = el.identity(n, m2.one, m2.zero)
    for a in range(D.dim):
        X = D.basis[a]
        adX = el.transpose([D.structure_constants[a][b] for b in range(D.dim)])
        expected = el.sub(
            el.kron(el.identity(D.dim, m2.one, m2.zero), X, m2.zero),
            el.kron(el.transpose(adX), I_n, m2.zero),
        )
        unit = tuple(m2.one if i == a else m2.zero for i in range(D.dim))
        cols = [calc.lie(unit, Form(1, b, n)).values for b in el.identity(O.dim, m2.one, m2.zero)]
        assert el.transpose(cols) == expected


@pytest.mark.parametrize("name", ["m2", "t2", "dual", "n3"])
@given(cs=coeffs)
@SETTINGS
def test_d_squared_zero(name, cs):
    A = fx.load(name)
    calc = calculus(A)
    for n in (0, 1):
        w = random_form(A, n, cs, underline=False)
        assert calc.differential(calc.differential(w)).is_zero()


@pytest.mark.parametrize("name", ["m2", "t2", "n3"])
@given(c1=coeffs, c2=coeffs)
@SETTINGS
def test_d_is_antiderivation(name, c1, c2):
    A = fx.load(name)
    calc = calculus(A)
    d = calc.differential
    for p, q in ((0, 1), (1, 1), (1, 0)):
        a, b = random_form(A, p, c1), random_form(A, q, c2)
        rhs = calc.wedge(d(a), b)
        second = calc.wedge(a, d(b))
        rhs = rhs + (second if p % 2 == 0 else second.scaled(-1))
        assert d(calc.wedge(a, b)) == rhs


@given(c1=coeffs, c2=coeffs, c3=coeffs)
@SETTINGS
def test_wedge_associative(c1, c2, c3):
    A = fx.load("m2")
    calc = calculus(A)
    a, b, c = random_form(A, 1, c1), random_form(A, 1, c2), random_form(A, 1, c3)
    assert calc.wedge(calc.wedge(a, b), c) == calc.wedge(a, calc.wedge(b, c))


@given(c1=coeffs, c2=coeffs)
@SETTINGS
def test_products_stay_z_multilinear(c1, c2):
    A = fx.load("dual")
    calc = calculus(A)
    a, b = random_form(A, 1, c1), random_form(A, 0, c2)
    assert calc.underline(1).contains(calc.wedge(a, b).values)


@pytest.mark.parametrize("name", ["m2", "t2"])
@given(cs=coeffs, x=st.lists(st.integers(-2, 2), min_size=3, max_size=3), y=st.lists(st.integers(-2, 2), min_size=3, max_size=3))
@SETTINGS
def test_cartan_relations(name, cs, x, y):
    A = fx.load(name)
    calc = calculus(A)
    D = A.der
    X = [A.field(c) for c in x[: D.dim]]
    Y = [A.field(c) for c in y[: D.dim]]
    XY = D.bracket_coords(X, Y)
    for n in (1, 2):
        w = random_form(A, n, cs)
        i, L = calc.interior, calc.lie
        assert L(X, w) == calc.differential(i(X, w)) + i(X, calc.differential(w))
        assert L(X, i(Y, w)) - i(Y, L(X, w)) == i(XY, w)
        assert L(X, L(Y, w)) - L(Y, L(X, w)) == L(XY, w)
        assert L(X, calc.differential(w)) == calc.differential(L(X, w))
        assert i(X, i(X, w)).is_zero()
        assert i(X, i(Y, w)) == i(Y, i(X, w)).scaled(-1)


@given(cs=coeffs, z=st.integers(-3, 3))
@SETTINGS
def test_interior_is_z_linear(cs, z):
    A = fx.load("n3")
    calc = calculus(A)
    w = random_form(A, 2, cs)
    X = A.der.basis[1]
    zx = A.element(x=z)
    zX = A.der.coords(el.matmul(A.left(zx), X, A.zero))
    Xc = A.der.coords(X)
    lhs = calc.interior(zX, w)
    rhs = calc.wedge(element_form(A, zx), calc.interior(Xc, w))
    assert lhs == rhs


@pytest.mark.parametrize("name", ["m2", "m2c2", "t2", "dual"])
@given(c1=coeffs, c2=coeffs)
@SETTINGS
def test_star_relations(name, c1, c2):
    A = fx.load(name)
    calc = calculus(A)
    s = calc.star
    for k, l in ((0, 1), (1, 1), (1, 2)):
        a, b = random_form(A, k, c1), random_form(A, l, c2)
        assert s(s(a)) == a
        assert calc.differential(s(a)) == s(calc.differential(a))
        sign = -1 if (k * l) % 2 else 1
        assert s(calc.wedge(a, b)) == calc.wedge(s(b), s(a)).scaled(sign)


def test_star_of_exact(m2):
    calc = calculus(m2)
    for j in range(4):
        a = m2.basis_vector(j)
        assert calc.star(calc.exact(a)) == calc.exact(m2.star(a))


def test_hermitian_pair_anticommutes_under_star(m2):
    calc = calculus(m2)
    a = calc.exact(m2.element(e11=1))
    b = calc.exact(m2.element(e12=1, e21=1))
    assert calc.star(a) == a and calc.star(b) == b
    assert calc.star(calc.wedge(a, b)) == calc.wedge(b, a).scaled(-1)


def test_star_needs_involution(m2):
    from ncg.algebra import Algebra

    bare = Algebra(m2.field, m2.dim, m2.basis_names, m2.unit, m2.mul, None, "bare")
    with pytest.raises(UnsupportedOperation):
        calculus(bare).star(element_form(bare, bare.unit))


def test_form_json_roundtrip(m2):
    calc = calculus(m2)
    w = calc.wedge(calc.exact(m2.element(e11=1)), calc.exact(m2.element(e21=1)))
    d = w.to_json(3, m2.field.format)
    assert set(d) == {"degree", "components"}
    assert form_from_json(d, 3, 4, m2.field.parse) == w
