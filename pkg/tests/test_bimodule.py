import functools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import exactlin as el
from ncg import fixtures as fx
from ncg.bimodule import (
    Bimodule,
    bimodule_from_json,
    bimodule_to_json,
    canonical_map_and_flags,
    character_bimodule,
    center_zmodule,
    derivation_zmodule,
    direct_sum,
    dual_bimodule,
    dual_zmodule,
    generated_sub_bimodule,
    hom_AA,
    hom_Z,
    hom_Z_to_A,
    is_central,
    pure_tensor,
    quotient_bimodule,
    regular_bimodule,
    sub_bimodule,
    tensor_over_A,
    tensor_over_Z,
    validate_bimodule,
    validate_zmodule,
    zmodule_from_json,
    zmodule_to_json,
)
from ncg.forms import omega1_minimal, omega1_underline

from oracle import bimodule_endomorphism_dim


def test_regular_and_derivation_modules_validate(any_algebra):
    A = any_algebra
    assert validate_bimodule(A, regular_bimodule(A)).passed
    assert validate_zmodule(A, derivation_zmodule(A)).passed
    assert validate_zmodule(A, center_zmodule(A)).passed
    assert is_central(A, regular_bimodule(A))


def test_injected_action_fault(t2):
    A = regular_bimodule(t2)
    bad_left = list(A.left)
    # e11 is idempotent; doubling its action breaks L_{e11}^2 = L_{e11}
    bad_left[0] = el.scale(t2.field(2), bad_left[0])
    M = Bimodule(t2, A.dim, tuple(bad_left), A.right, name="bad")
    rep = validate_bimodule(t2, M)
    assert not rep.passed


@pytest.mark.parametrize("name,expected", [("m2c2", 9), ("t2", 4), ("dual", 1), ("n3", 64)])
def test_endomorphisms_of_one_forms_match_oracle(name, expected):
    A = fx.load(name)
    O = omega1_underline(A)
    assert hom_AA(A, O, O).dim == expected
    assert bimodule_endomorphism_dim(O) == expected


def test_m2_one_forms_are_free_of_rank_three(m2):
    # Omega1 ~ A^3 as a bimodule: End is 3x3 matrices over the center
    O = omega1_underline(m2)
    assert O.dim == 12
    assert hom_AA(m2, O, O).dim == 9
    assert hom_AA(m2, O, regular_bimodule(m2)).dim == 3
    assert tensor_over_A(m2, O, O).dim == 36


def test_hom_spaces(m2, t2):
    Der = derivation_zmodule(m2)
    assert hom_Z(m2, Der, Der).dim == 9
    assert hom_Z_to_A(m2, Der).dim == 12
    assert dual_zmodule(m2, Der).dim == 12
    assert dual_bimodule(t2, regular_bimodule(t2)).dim == 1


@pytest.mark.parametrize("name", ["m2", "t2", "dual", "k2"])
def test_one_forms_reflexive(name):
    A = fx.load(name)
    O = omega1_underline(A)
    flags = canonical_map_and_flags(A, O)
    assert flags.reflexive
    assert flags.separated_in_M
    assert canonical_map_and_flags(A, derivation_zmodule(A)).injective


def test_twisted_t2_character_is_central_not_diagonal(t2):
    M = bimodule_from_json(t2, fx.load_json("t2_twisted"))
    assert validate_bimodule(t2, M).passed
    assert is_central(t2, M)
    assert hom_AA(t2, M, regular_bimodule(t2)).dim == 0
    flags = canonical_map_and_flags(t2, M)
    assert not flags.injective and not flags.diagonal


def test_mismatched_characters_not_central(k2):
    M = character_bimodule(k2, (1, 0), (0, 1))
    assert validate_bimodule(k2, M).passed
    assert not is_central(k2, M)


def test_sub_quotient_sum(t2):
    A = regular_bimodule(t2)
    S = generated_sub_bimodule(A, [t2.element(e12=1)])
    assert S.dim == 1
    sub = sub_bimodule(A, S)
    quot, Q = quotient_bimodule(A, S)
    assert validate_bimodule(t2, sub).passed and validate_bimodule(t2, quot).passed
    assert sub.dim + quot.dim == A.dim
    assert validate_bimodule(t2, direct_sum(A, sub)).passed


def test_tensor_over_Z_dims(m2, k2):
    Der = derivation_zmodule(m2)
    assert tensor_over_Z(m2, Der, Der).dim == 9
    K = regular_bimodule(k2)
    # Q x Q over its own center: A (x)_A A = A
    assert tensor_over_Z(k2, K, K).dim == 2
    assert tensor_over_A(k2, K, K).dim == 2


@functools.lru_cache(maxsize=None)
def _m2_square():
    A = fx.load("m2")
    O = omega1_underline(A)
    return A, O, tensor_over_A(A, O, O)


@given(st.lists(st.integers(-3, 3), min_size=12, max_size=12), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_tensor_balanced(wc, ac):
    # (w a) (x) v = w (x) (a v) in Omega1 (x)_A Omega1
    A, O, T = _m2_square()
    real = T.realization
    K = A.field
    w = tuple(K(x) for x in wc)
    a = tuple(K(x) for x in ac)
    v = O.basis_vector(3)
    lhs = real.class_of(el.matvec(O.right_mat(a), w, A.zero), v)
    rhs = real.class_of(w, el.matvec(O.left_mat(a), v, A.zero))
    assert lhs == rhs
    assert len(pure_tensor(w, v)) == O.dim ** 2


def test_json_roundtrip(m2):
    O = omega1_underline(m2)
    d = json.loads(json.dumps(bimodule_to_json(O)))
    M = bimodule_from_json(m2, d)
    assert M.left == O.left and M.right == O.right
    Der = derivation_zmodule(m2)
    N = zmodule_from_json(m2, json.loads(json.dumps(zmodule_to_json(Der))))
    assert N.center_action == Der.center_action


def test_minimal_one_forms_in_underline(t2):
    assert omega1_minimal(t2).dim == 2
    assert omega1_underline(t2).dim == 6
