from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import exactlin as el
from ncg.field import QQ, QQI, GaussianRational, format_scalar

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
gauss = st.builds(GaussianRational, small, small)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(m):
    assert el.rank(m) == sympy.Matrix(m).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_is_kernel(m):
    ncols = len(m[0])
    K = el.kernel(m)
    assert K.dim + el.rank(m) == ncols
    for v in K.basis:
        assert el.is_zero(el.matvec(m, v))


@given(matrices(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=60, deadline=None)
def test_solve_affine_or_witness(m, b):
    rhs = b[: len(m)]
    sol = el.solve_affine(m, rhs)
    if sol:
        assert el.matvec(m, sol.particular) == tuple(rhs)
    else:
        # the witness row must be inconsistent with the rows above it
        k = sol.witness_row
        aug = [list(r) + [x] for r, x in zip(m[: k + 1], rhs[: k + 1])]
        assert el.rank(aug) > el.rank(m[: k + 1])


def test_infeasible_is_falsy():
    sol = el.solve_affine([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [Fraction(1), Fraction(3)])
    assert not sol
    assert sol.witness_row == 1


@given(matrices(), matrices())
@settings(max_examples=40, deadline=None)
def test_subspace_canonical(m1, m2):
    n = len(m1[0])
    if len(m2[0]) != n:
        return
    a = el.Subspace.span(m1, n)
    assert el.Subspace.span(list(reversed(m1)) + list(m1), n) == a
    b = el.Subspace.span(m2, n)
    s = a + b
    i = el.intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    assert i.is_subspace_of(a) and i.is_subspace_of(b)


def test_quotient_projection():
    n = 3
    S = el.Subspace.full(n, Fraction(1), Fraction(0))
    sub = el.Subspace.span([(Fraction(1), Fraction(1), Fraction(0))], n)
    Q = el.Quotient.of(S, sub)
    assert Q.dim == 2
    assert el.is_zero(Q.project((Fraction(2), Fraction(2), Fraction(0))))


@given(gauss, gauss, gauss)
def test_gaussian_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if x != 0:
        assert x * (1 / x) == 1
    assert x.conjugate().conjugate() == x


@given(gauss)
def test_gaussian_roundtrip_through_text(x):
    assert QQI.parse(format_scalar(x)) == x


def test_field_parsing():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert QQI.parse("1/2-3*i") == GaussianRational(Fraction(1, 2), -3)
    assert QQI.parse("2*i") == QQI.i * 2
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(ValueError):
        QQ(QQI.i)


def test_inverse():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert el.matmul(m, el.inverse(m)) == el.identity(2, Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        el.inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
