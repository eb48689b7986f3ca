"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`Algebra` stores ``mul[i][j][k]``, the coefficient of ``e_k`` in
``e_i e_j``.  Elements are coefficient tuples.  Linear maps ``A -> A`` are
matrices acting on column vectors, so a derivation ``D`` has ``D(e_k)`` as
its column ``k``.

The derived objects (center, derivations, inner derivations, the Z(A)-module
structure of Der(A)) are computed lazily and cached on the algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import exactlin as el
from .exactlin import Matrix, Subspace, Vector
from .field import Field, field as get_field
from .report import Report


class UnsupportedOperation(Exception):
    """Raised when an operation needs structure (e.g. an involution) that is absent."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Involution:
    """Antilinear (or linear) involution ``v -> S conj(v)``."""

    matrix: Matrix
    conjugate: bool = False

    def apply(self, v: Sequence) -> Vector:
        if self.conjugate:
            v = el.conj_vector(v)
        return el.matvec(self.matrix, v, _zero(v))

    def conj_matrix(self, m: Matrix) -> Matrix:
        """``S conj(m) conj(S)``; transports a linear map through the involution."""
        if self.conjugate:
            return el.matmul(el.matmul(self.matrix, el.conj_matrix(m)), el.conj_matrix(self.matrix))
        return el.matmul(el.matmul(self.matrix, m), self.matrix)

    def is_involutive(self) -> bool:
        s = self.matrix
        n = len(s)
        sq = el.matmul(s, el.conj_matrix(s)) if self.conjugate else el.matmul(s, s)
        return sq == el.identity(n, _one(s), _zero(s))


def _zero(v):
    for x in v:
        if isinstance(x, tuple):
            return _zero(x)
        return x * 0
    return 0


def _one(m):
    return _zero(m) + 1


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    dim: int
    basis_names: tuple
    unit: Vector
    mul: tuple  # mul[i][j][k]
    involution: Optional[Involution] = None
    name: str = ""

    def __post_init__(self):
        n = self.dim
        if len(self.unit) != n or len(self.basis_names) != n:
            raise ValueError("unit and basis_names must have length dim")
        if len(self.mul) != n or any(len(r) != n for r in self.mul) or any(
            len(c) != n for r in self.mul for c in r
        ):
            raise ValueError(f"structure tensor must have shape {n}x{n}x{n}")
        if self.involution is not None and el.shape(self.involution.matrix) != (n, n):
            raise ValueError("involution matrix must be dim x dim")

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, field={self.field.name})"

    # -- elements ---------------------------------------------------------

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.one if k == i else self.zero for k in range(self.dim))

    def element(self, **coeffs) -> Vector:
        idx = {nm: i for i, nm in enumerate(self.basis_names)}
        v = [self.zero] * self.dim
        for nm, c in coeffs.items():
            v[idx[nm]] = self.field(c)
        return tuple(v)

    def zero_vector(self) -> Vector:
        return (self.zero,) * self.dim

    @cached_property
    def left_mats(self) -> tuple:
        """``left_mats[i] @ v == e_i * v``."""
        n = self.dim
        return tuple(
            tuple(tuple(self.mul[i][j][k] for j in range(n)) for k in range(n)) for i in range(n)
        )

    @cached_property
    def right_mats(self) -> tuple:
        """``right_mats[i] @ v == v * e_i``."""
        n = self.dim
        return tuple(
            tuple(tuple(self.mul[j][i][k] for j in range(n)) for k in range(n)) for i in range(n)
        )

    def left(self, a: Sequence) -> Matrix:
        return el.lincomb(a, self.left_mats, self.dim, self.dim, self.zero)

    def right(self, b: Sequence) -> Matrix:
        return el.lincomb(b, self.right_mats, self.dim, self.dim, self.zero)

    def multiply(self, a: Sequence, b: Sequence) -> Vector:
        n = self.dim
        out = [self.zero] * n
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.mul[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] = out[k] + xy * c
        return tuple(out)

    def commutator(self, a: Sequence, b: Sequence) -> Vector:
        return el.vsub(self.multiply(a, b), self.multiply(b, a))

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``a -> xa - ax``."""
        return el.sub(self.left(x), self.right(x))

    def star(self, a: Sequence) -> Vector:
        if self.involution is None:
            raise UnsupportedOperation(f"algebra {self.name!r} has no involution")
        return self.involution.apply(a)

    def trace_functional(self, a: Sequence):
        """Trace of left multiplication (the regular trace)."""
        m = self.left(a)
        return sum((m[i][i] for i in range(self.dim)), self.zero)

    # -- derived structure -------------------------------------------------

    @cached_property
    def center_space(self) -> Subspace:
        return center(self)

    @cached_property
    def der(self) -> "DerivationSpace":
        return derivations(self)

    @cached_property
    def center_mats(self) -> tuple:
        """Left multiplication matrices of the center basis elements."""
        return tuple(self.left(z) for z in self.center_space.basis)

    @property
    def has_trivial_center(self) -> bool:
        return self.center_space.dim == 1


# ----------------------------------------------------------------------------
# validation


def validate_algebra(A: Algebra) -> Report:
    """Associativity, unit, and (if present) involution axioms, per basis triple."""
    rep = Report(f"algebra {A.name}")
    n = A.dim
    bad = []
    for i in range(n):
        ei = A.basis_vector(i)
        for j in range(n):
            eij = A.multiply(ei, A.basis_vector(j))
            for k in range(n):
                ek = A.basis_vector(k)
                lhs = A.multiply(eij, ek)
                rhs = A.multiply(ei, A.multiply(A.basis_vector(j), ek))
                if lhs != rhs:
                    bad.append((i, j, k))
    rep.check(
        "associativity",
        not bad,
        "" if not bad else "associativity failed at (i,j,k)=" + ", ".join(map(str, bad[:5])),
    )
    bad_unit = [
        i
        for i in range(n)
        if A.multiply(A.unit, A.basis_vector(i)) != A.basis_vector(i)
        or A.multiply(A.basis_vector(i), A.unit) != A.basis_vector(i)
    ]
    rep.check("unit", not bad_unit, "" if not bad_unit else f"unit fails on basis {bad_unit}")
    if A.involution is not None:
        inv = A.involution
        rep.check("involution: (a*)* = a", inv.is_involutive())
        rep.check("involution: 1* = 1", inv.apply(A.unit) == tuple(A.unit))
        bad_anti = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if inv.apply(A.multiply(A.basis_vector(i), A.basis_vector(j)))
            != A.multiply(inv.apply(A.basis_vector(j)), inv.apply(A.basis_vector(i)))
        ]
        rep.check(
            "involution: (ab)* = b*a*",
            not bad_anti,
            "" if not bad_anti else f"fails at (i,j)={bad_anti[:5]}",
        )
    return rep


def multiply(A: Algebra, a: Sequence, b: Sequence) -> Vector:
    return A.multiply(a, b)


def center(A: Algebra) -> Subspace:
    """Canonical basis of ``{z : z e_i = e_i z for all i}``."""
    n = A.dim
    rows = []
    for i in range(n):
        for k in range(n):
            row = {}
            for j in range(n):
                c = A.mul[j][i][k] - A.mul[i][j][k]
                if c:
                    row[j] = c
            rows.append(row)
    return el.kernel_sparse(rows, n, A.zero)


# ----------------------------------------------------------------------------
# derivations


def leibniz_rows(A: Algebra) -> list[dict]:
    """Linear constraints on a flattened ``D`` (column-major) for ``D(ab) = D(a)b + aD(b)``."""
    n = A.dim
    L, R = A.left_mats, A.right_mats
    rows = []
    for i in range(n):
        for j in range(n):
            cij = A.mul[i][j]
            for s in range(n):
                row: dict = {}

                def bump(col, val):
                    nv = row.get(col, 0) + val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)

                for k in range(n):
                    if cij[k]:
                        bump(k * n + s, cij[k])
                for r in range(n):
                    if R[j][s][r]:
                        bump(i * n + r, -R[j][s][r])
                    if L[i][s][r]:
                        bump(j * n + r, -L[i][s][r])
                rows.append(row)
    return rows


def bracket(X: Matrix, Y: Matrix) -> Matrix:
    """Commutator ``XY - YX`` of two derivations."""
    z = _zero(X) if X else 0
    return el.sub(el.matmul(X, Y, z), el.matmul(Y, X, z))


@dataclass(frozen=True, eq=False)
class DerivationSpace:
    """Der(A) with its canonical basis, Int(A), outer representatives and brackets."""

    algebra: Algebra
    all: Subspace
    inner: Subspace
    outer_reps: tuple

    @property
    def dim(self) -> int:
        return self.all.dim

    @cached_property
    def basis(self) -> tuple:
        n = self.algebra.dim
        return tuple(el.unflatten(v, n, n) for v in self.all.basis)

    def matrix(self, coords: Sequence) -> Matrix:
        n = self.algebra.dim
        return el.unflatten(self.all.from_coords(coords), n, n)

    def coords(self, D: Matrix) -> Vector:
        return self.all.coords(el.flatten(D))

    def contains(self, D: Matrix) -> bool:
        return self.all.contains(el.flatten(D))

    @cached_property
    def structure_constants(self) -> tuple:
        """``sc[a][b]`` = coordinates of ``[X_a, X_b]``."""
        B = self.basis
        return tuple(tuple(self.coords(bracket(X, Y)) for Y in B) for X in B)

    def bracket_coords(self, u: Sequence, v: Sequence) -> Vector:
        d = self.dim
        A = self.algebra
        out = [A.zero] * d
        sc = self.structure_constants
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                xy = x * y
                for c, s in enumerate(sc[a][b]):
                    if s:
                        out[c] = out[c] + xy * s
        return tuple(out)

    @cached_property
    def center_action(self) -> tuple:
        """For each center basis element ``z``, the matrix of ``X -> zX`` on Der coordinates."""
        A = self.algebra
        mats = []
        for Lz in A.center_mats:
            cols = [self.coords(el.matmul(Lz, X, A.zero)) for X in self.basis]
            mats.append(el.transpose(cols) if cols else ())
        return tuple(mats)

    def apply(self, coords: Sequence, a: Sequence) -> Vector:
        return el.matvec(self.matrix(coords), a, self.algebra.zero)

    @cached_property
    def values(self) -> tuple:
        """``values[a][i]`` = ``X_a(e_i)``."""
        return tuple(tuple(tuple(X[r][i] for r in range(len(X))) for i in range(len(X))) for X in self.basis)

    @cached_property
    def inner_preimages(self) -> tuple:
        """For each basis derivation ``X_a`` an ``x`` with ``ad(x) = X_a``.

        Requires Out(A) = 0.  The preimage is the echelon-canonical solution,
        i.e. it is determined up to the center by the least-index rule.
        """
        A = self.algebra
        if self.outer_reps:
            raise PreconditionError("Out(A) != 0: not every derivation is inner")
        n = A.dim
        # columns of the linear map x -> flatten(ad x)
        cols = [el.flatten(A.ad(A.basis_vector(i))) for i in range(n)]
        m = el.transpose(cols)
        out = []
        for v in self.all.basis:
            sol = el.solve_affine(m, v, n, A.zero)
            assert sol, "inner derivation without preimage"
            out.append(sol.particular)
        return tuple(out)

    @cached_property
    def star_matrix(self) -> Matrix:
        """Matrix ``J`` with ``X* = J conj(X)`` in Der coordinates."""
        A = self.algebra
        if A.involution is None:
            raise UnsupportedOperation("no involution on the algebra")
        cols = [self.coords(derivation_star(A, X)) for X in self.basis]
        return el.transpose(cols) if cols else ()

    def star_coords(self, u: Sequence) -> Vector:
        A = self.algebra
        c = el.conj_vector(u) if A.involution.conjugate else tuple(u)
        return el.matvec(self.star_matrix, c, A.zero)


def derivations(A: Algebra) -> DerivationSpace:
    n = A.dim
    all_der = el.kernel_sparse(leibniz_rows(A), n * n, A.zero)
    inner = Subspace.span(
        [el.flatten(A.ad(A.basis_vector(i))) for i in range(n)], n * n, A.zero
    )
    if not inner.is_subspace_of(all_der):
        raise AssertionError("inner derivations must be derivations")
    outer = tuple(el.quotient_basis(all_der, inner))
    ds = DerivationSpace(A, all_der, inner, outer)
    # post-hoc closure checks
    for X in ds.basis:
        for Y in ds.basis:
            if not ds.contains(bracket(X, Y)):
                raise AssertionError("Der(A) not closed under bracket")
        for Lz in A.center_mats:
            if not ds.contains(el.matmul(Lz, X, A.zero)):
                raise AssertionError("Der(A) not stable under the center")
    return ds


def derivation_action_on_center(A: Algebra, D: Matrix) -> Matrix:
    """Restriction of ``D`` to Z(A) in center coordinates."""
    Z = A.center_space
    cols = []
    for z in Z.basis:
        img = el.matvec(D, z, A.zero)
        if not Z.contains(img):
            raise AssertionError("derivation does not preserve the center")
        cols.append(Z.coords(img))
    return el.transpose(cols) if cols else ()


def derivation_star(A: Algebra, X: Matrix) -> Matrix:
    """``X*(a) = (X(a*))*``."""
    if A.involution is None:
        raise UnsupportedOperation(f"algebra {A.name!r} has no involution")
    return A.involution.conj_matrix(X)


def is_class_Cinf0(A: Algebra) -> bool:
    """True iff the only elements killed by every derivation are scalars."""
    rows = []
    for X in A.der.basis:
        for r in X:
            rows.append({k: x for k, x in enumerate(r) if x})
    joint = el.kernel_sparse(rows, A.dim, A.zero)
    return joint == Subspace.span([A.unit], A.dim, A.zero)


def is_derivation(A: Algebra, D: Matrix) -> bool:
    n = A.dim
    for i in range(n):
        ei = A.basis_vector(i)
        Dei = el.matvec(D, ei, A.zero)
        for j in range(n):
            ej = A.basis_vector(j)
            lhs = el.matvec(D, A.multiply(ei, ej), A.zero)
            rhs = el.vadd(A.multiply(Dei, ej), A.multiply(ei, el.matvec(D, ej, A.zero)))
            if lhs != rhs:
                return False
    return True


# ----------------------------------------------------------------------------
# JSON


def algebra_to_json(A: Algebra) -> dict:
    f = A.field.format
    d = {
        "field": A.field.name,
        "dim": A.dim,
        "basis_names": list(A.basis_names),
        "unit": [f(x) for x in A.unit],
        "mul": [[[f(x) for x in c] for c in row] for row in A.mul],
    }
    if A.name:
        d["name"] = A.name
    if A.involution is not None:
        d["involution"] = {
            "matrix": [[f(x) for x in row] for row in A.involution.matrix],
            "conjugate": A.involution.conjugate,
        }
    return d


def algebra_from_json(d: dict, name: str = "") -> Algebra:
    try:
        K = get_field(d["field"])
        n = int(d["dim"])
        p = K.parse
        mul = tuple(tuple(tuple(p(x) for x in c) for c in row) for row in d["mul"])
        inv = None
        if d.get("involution") is not None:
            inv = Involution(
                tuple(tuple(p(x) for x in row) for row in d["involution"]["matrix"]),
                bool(d["involution"].get("conjugate", False)),
            )
        return Algebra(
            field=K,
            dim=n,
            basis_names=tuple(d.get("basis_names") or [f"e{i}" for i in range(n)]),
            unit=tuple(p(x) for x in d["unit"]),
            mul=mul,
            involution=inv,
            name=d.get("name", name),
        )
    except KeyError as exc:
        raise ValueError(f"algebra JSON missing field {exc}") from None


def load_algebra(path) -> Algebra:
    with open(path) as fh:
        return algebra_from_json(json.load(fh), name=str(path))
