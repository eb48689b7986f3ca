import json

import pytest

from ncg import exactlin as el
from ncg import fixtures as fx
from ncg.algebra import (
    algebra_from_json,
    algebra_to_json,
    bracket,
    derivation_star,
    is_class_Cinf0,
    is_derivation,
    validate_algebra,
)

from oracle import center_dim, derivation_dim, inner_dim

EXPECTED = {
    # name: (dim, Z, Der, Int, Out, C_inf0)
    "m2": (4, 1, 3, 3, 0, True),
    "m2c2": (4, 1, 3, 3, 0, True),
    "t2": (3, 1, 2, 2, 0, True),
    "k2": (2, 2, 0, 0, 0, False),
    "dual": (2, 2, 1, 0, 1, True),
    "n3": (3, 3, 4, 0, 4, True),
}


@pytest.mark.parametrize("name", fx.ALGEBRAS)
def test_structure_against_oracle(name):
    A = fx.load(name)
    assert derivation_dim(A) == A.der.dim
    assert center_dim(A) == A.center_space.dim
    assert inner_dim(A) == A.der.inner.dim


@pytest.mark.parametrize("name", fx.ALGEBRAS)
def test_structure_table(name):
    A = fx.load(name)
    D = A.der
    got = (A.dim, A.center_space.dim, D.dim, D.inner.dim, len(D.outer_reps), is_class_Cinf0(A))
    assert got == EXPECTED[name]


@pytest.mark.parametrize("name", fx.ALGEBRAS)
def test_fixture_files_match_builders(name):
    assert algebra_to_json(fx.load(name)) == algebra_to_json(fx.build(name))


def test_json_roundtrip(any_algebra):
    A = any_algebra
    B = algebra_from_json(json.loads(json.dumps(algebra_to_json(A))))
    assert B.mul == A.mul and B.unit == A.unit


def test_validate_all_fixtures(any_algebra):
    assert validate_algebra(any_algebra).passed


def test_injected_associativity_fault(m2):
    d = algebra_to_json(m2)
    d["mul"][1][2] = ["0", "1", "0", "0"]
    rep = validate_algebra(algebra_from_json(d))
    assert not rep.passed
    assert rep.failures[0].detail.startswith("associativity failed at (i,j,k)=")


def test_derivations_closed_and_star_stable(any_algebra):
    A = any_algebra
    for X in A.der.basis:
        assert is_derivation(A, X)
        if A.involution is not None:
            assert A.der.contains(derivation_star(A, X))
        for Y in A.der.basis:
            assert A.der.contains(bracket(X, Y))


def test_inner_preimages(m2):
    D = m2.der
    for x, X in zip(D.inner_preimages, D.basis):
        assert m2.ad(x) == X


def test_center_acts_on_der(dual):
    # Der(dual) is spanned by eps d/deps, and eps kills it: eps * X is again a derivation
    eps = dual.element(eps=1)
    X = dual.der.basis[0]
    assert is_derivation(dual, el.matmul(dual.left(eps), X, dual.zero))
