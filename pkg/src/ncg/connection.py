"""Connections on central bimodules and on Z(A)-modules.

A connection is stored by its values on the Der basis: one endomorphism
matrix ``nabla[a]`` of the target per basis derivation ``X_a``.  Connections
on a fixed target form an affine space; :func:`find_connections` solves the
axioms as one exact linear system over the entries of all matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from random import Random
from typing import Optional, Sequence, Union

from . import exactlin as el
from .algebra import Algebra, PreconditionError, UnsupportedOperation
from .bimodule import (
    Bimodule,
    ZModule,
    canonical_map_and_flags,
    direct_sum as bimodule_direct_sum,
    dual_bimodule,
    dual_zmodule,
    hom_AA,
    is_central,
    is_sub_bimodule,
    quotient_bimodule,
    regular_bimodule,
    sub_bimodule,
    tensor_over_A as bimodule_tensor_over_A,
    tensor_over_Z as bimodule_tensor_over_Z,
)
from .exactlin import Infeasible, Matrix, Subspace
from .forms import Calculus, Form, FormRealization, calculus, omega1_underline
from .report import Report

Target = Union[Bimodule, ZModule]


class InvariantError(RuntimeError):
    """An identity that must hold by construction failed."""


@dataclass(frozen=True)
class NotStable:
    """``nabla[derivation]`` does not preserve the subspace."""

    derivation: int

    def __bool__(self):
        return False


@dataclass(frozen=True, eq=False)
class Connection:
    algebra: Algebra
    target: Target
    coefficients: tuple
    name: str = ""

    @property
    def dim(self) -> int:
        return self.target.dim

    def along(self, u: Sequence) -> Matrix:
        """``nabla_X`` for ``X`` with Der coordinates ``u``."""
        m = self.dim
        return el.lincomb(u, self.coefficients, m, m, self.algebra.zero)

    def apply(self, a: int, v: Sequence):
        return el.matvec(self.coefficients[a], v, self.algebra.zero)

    def __add__(self, gamma: Sequence[Matrix]) -> "Connection":
        return Connection(self.algebra, self.target, tuple(el.add(n, g) for n, g in zip(self.coefficients, gamma)), self.name)

    def difference(self, other: "Connection") -> tuple:
        return tuple(el.sub(a, b) for a, b in zip(self.coefficients, other.coefficients))

    def flat_vector(self) -> tuple:
        return tuple(x for c in self.coefficients for x in el.flatten(c))

    def on(self, target: Target) -> "Connection":
        """Same matrices, re-attached to an isomorphic target in the same coordinates."""
        if target.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Connection(self.algebra, target, self.coefficients, self.name)

    def to_json(self) -> dict:
        f = self.algebra.field.format
        return {
            "target": self.target.name,
            "coefficients": [[[f(x) for x in row] for row in c] for c in self.coefficients],
        }


def _zero_matrix(A, m):
    return el.zeros(m, m, A.zero)


def connection_from_json(A: Algebra, target: Target, d: dict) -> Connection:
    p = A.field.parse
    coeffs = tuple(tuple(tuple(p(x) for x in row) for row in c) for c in d["coefficients"])
    if target.dim == 0:
        coeffs = tuple(() for _ in coeffs)
    return Connection(A, target, coeffs, d.get("name", ""))


# ----------------------------------------------------------------------------
# the affine system


@dataclass(frozen=True)
class Equation:
    """Provenance of one row of the connection system."""

    axiom: str
    derivation: int
    generator: int
    entry: tuple

    def describe(self) -> str:
        return f"{self.axiom} for X_{self.derivation}, generator {self.generator}, entry {self.entry}"


def _commutator_rows(alpha, S, rhs, m, eqs, tag, gen, rows, vals):
    """Rows of ``nabla_alpha S - S nabla_alpha = rhs`` (all matrices m x m)."""
    off = alpha * m * m
    for r in range(m):
        for k in range(m):
            row: dict = {}
            for p in range(m):
                s = S[p][k]
                if s:
                    c = off + p * m + r
                    row[c] = row.get(c, 0) + s
            for q in range(m):
                t = S[r][q]
                if t:
                    c = off + k * m + q
                    row[c] = row.get(c, 0) - t
            row = {c: v for c, v in row.items() if v}
            b = rhs[r][k] if rhs is not None else 0
            if row or b:
                rows.append(row)
                vals.append(b)
                eqs.append(Equation(tag, alpha, gen, (r, k)))


def _z_linearity_rows(A, target_center_mats, m, rows, vals, eqs):
    """``sum_b ZA[j][b][a] nabla_b - Z_j nabla_a = 0``."""
    D = A.der
    ZA = D.center_action
    unit_c = A.center_space.coords(A.unit)
    for j, Zj in enumerate(target_center_mats):
        if all((c == 1) == (k == j) for k, c in enumerate(unit_c)):
            continue
        for a in range(D.dim):
            for r in range(m):
                for k in range(m):
                    row: dict = {}
                    for b in range(D.dim):
                        c = ZA[j][b][a]
                        if c:
                            col = b * m * m + k * m + r
                            row[col] = row.get(col, 0) + c
                    for q in range(m):
                        t = Zj[r][q]
                        if t:
                            col = a * m * m + k * m + q
                            row[col] = row.get(col, 0) - t
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
                        vals.append(A.zero)
                        eqs.append(Equation("Z-linearity", a, j, (r, k)))


def _target_center_mats(A: Algebra, target: Target) -> tuple:
    if isinstance(target, Bimodule):
        return tuple(target.left_mat(z) for z in A.center_space.basis)
    return target.center_action


def connection_system(A: Algebra, target: Target, homogeneous: bool = False):
    """All equations for connections on ``target``: ``(rows, rhs, equations)``."""
    D = A.der
    m = target.dim
    rows, vals, eqs = [], [], []
    if isinstance(target, Bimodule):
        for a, X in enumerate(D.basis):
            for i in range(A.dim):
                Xe = el.matvec(X, A.basis_vector(i), A.zero)
                rl = None if homogeneous else target.left_mat(Xe)
                rr = None if homogeneous else target.right_mat(Xe)
                _commutator_rows(a, target.left[i], rl, m, eqs, "left Leibniz", i, rows, vals)
                _commutator_rows(a, target.right[i], rr, m, eqs, "right Leibniz", i, rows, vals)
    else:
        Z = A.center_space
        for a, X in enumerate(D.basis):
            for j, z in enumerate(Z.basis):
                Xz = Z.coords(el.matvec(X, z, A.zero))
                rhs = None if homogeneous else el.lincomb(Xz, target.center_action, m, m, A.zero)
                _commutator_rows(a, target.center_action[j], rhs, m, eqs, "Leibniz over Z", j, rows, vals)
    _z_linearity_rows(A, _target_center_mats(A, target), m, rows, vals, eqs)
    return rows, [v if v else A.zero for v in vals], eqs


def _unpack(A, vec, d, m):
    return tuple(el.unflatten(vec[a * m * m : (a + 1) * m * m], m, m) if m else () for a in range(d))


@dataclass(frozen=True, eq=False)
class ConnectionSpace:
    """``particular + span(model_basis)``: every connection on ``target``."""

    particular: Connection
    model_basis: tuple  # each element: tuple of matrices, one per Der basis index
    solution: el.AffineSolution = dc_field(repr=False)

    @property
    def target(self):
        return self.particular.target

    @property
    def model_dim(self) -> int:
        return len(self.model_basis)

    def sample(self, coeffs: Sequence) -> Connection:
        A = self.particular.algebra
        d, m = A.der.dim, self.target.dim
        vec = self.solution.sample(coeffs)
        return Connection(A, self.target, _unpack(A, vec, d, m), "sample")

    def random(self, rng: Random, bound: int = 5) -> Connection:
        K = self.particular.algebra.field
        coeffs = [K(rng.randint(-bound, bound)) for _ in range(self.model_dim)]
        return self.sample(coeffs)

    def contains(self, nabla: Connection) -> bool:
        diff = el.vsub(nabla.flat_vector(), self.particular.flat_vector())
        return self.solution.kernel.contains(diff)

    def model_contains(self, gamma: Sequence[Matrix]) -> bool:
        return self.solution.kernel.contains(tuple(x for g in gamma for x in el.flatten(g)))

    def to_json(self) -> dict:
        f = self.particular.algebra.field.format
        d = self.particular.to_json()
        d["model_basis"] = [[[[f(x) for x in row] for row in g] for g in gamma] for gamma in self.model_basis]
        return d


@dataclass(frozen=True)
class InfeasibleConnection(Infeasible):
    equation: Optional[Equation] = None

    def to_json(self) -> dict:
        return {"status": "infeasible", "witness_row": self.witness_row, "equation": self.equation.describe() if self.equation else ""}


def find_connections(A: Algebra, target: Target):
    """Solve the connection axioms; :class:`ConnectionSpace` or :class:`InfeasibleConnection`."""
    if isinstance(target, Bimodule) and not is_central(A, target):
        raise PreconditionError("connections are defined on central bimodules")
    d, m = A.der.dim, target.dim
    rows, rhs, eqs = connection_system(A, target)
    sol = el.solve_sparse(rows, rhs, d * m * m, A.zero)
    if not sol:
        return InfeasibleConnection(sol.witness_row, eqs[sol.witness_row])
    particular = Connection(A, target, _unpack(A, sol.particular, d, m), "particular")
    model = tuple(_unpack(A, v, d, m) for v in sol.kernel.basis)
    return ConnectionSpace(particular, model, sol)


def validate_connection(nabla: Connection) -> Report:
    """Evaluate every axiom equation on ``nabla`` and name the failures."""
    A = nabla.algebra
    rep = Report(f"connection {nabla.name} on {nabla.target.name}")
    d = A.der.dim
    if len(nabla.coefficients) != d:
        rep.check("one matrix per derivation", False, f"{len(nabla.coefficients)} vs {d}")
        return rep
    rows, rhs, eqs = connection_system(A, nabla.target)
    x = nabla.flat_vector()
    bad = {}
    for row, b, eq in zip(rows, rhs, eqs):
        val = sum((c * x[k] for k, c in row.items()), A.zero)
        if val != b:
            bad.setdefault(eq.axiom, []).append(eq)
    axioms = ["Z-linearity"]
    axioms += ["left Leibniz", "right Leibniz"] if isinstance(nabla.target, Bimodule) else ["Leibniz over Z"]
    for ax in axioms:
        fails = bad.get(ax, [])
        rep.check(ax, not fails, fails[0].describe() if fails else "")
    return rep


def is_connection(nabla: Connection) -> bool:
    return validate_connection(nabla).passed


# ----------------------------------------------------------------------------
# constructors


def canonical_connection(A: Algebra) -> Connection:
    """``nabla_X = X`` on A."""
    return Connection(A, regular_bimodule(A), A.der.basis, "canonical")


def canonical_inner_connection(A: Algebra, M: Bimodule) -> Connection:
    """``nabla_{ad x}(m) = xm - mx``; needs Out(A) = 0 and a central ``M``."""
    D = A.der
    if D.outer_reps:
        raise PreconditionError("the canonical inner connection needs Out(A) = 0")
    if not is_central(A, M):
        raise PreconditionError("M must be central")
    coeffs = tuple(el.sub(M.left_mat(x), M.right_mat(x)) for x in D.inner_preimages)
    return Connection(A, M, coeffs, "canonical-inner")


def form_bimodule(A: Algebra, n: int, variant: str = "underline") -> Bimodule:
    from .forms import minimal_forms

    calc = calculus(A)
    if variant == "underline":
        return calc.value_bimodule(n, name=f"Omega{n}")
    if variant == "minimal":
        return calc.value_bimodule(n, minimal_forms(A, n)[n].space, name=f"Omega{n}_min")
    raise ValueError(f"unknown form variant {variant!r}")


def lie_connection(A: Algebra, n: int = 1, variant: str = "underline") -> Connection:
    """``X -> L_X`` on n-forms; needs a trivial center."""
    if not A.has_trivial_center:
        raise PreconditionError("the Lie derivative is Z(A)-linear in X only for trivial center")
    M = form_bimodule(A, n, variant)
    real: FormRealization = M.realization
    calc = real.calculus
    D = A.der
    coeffs = []
    for a in range(D.dim):
        u = tuple(A.one if b == a else A.zero for b in range(D.dim))
        cols = [real.coords(calc.lie(u, real.form(c))) for c in el.identity(M.dim, A.one, A.zero)]
        coeffs.append(el.transpose(cols) if cols else ())
    return Connection(A, M, tuple(coeffs), "lie")


def combine(weights: Sequence, connections: Sequence[Connection]) -> Connection:
    """Affine combination ``sum w_i nabla_i`` (weights should sum to 1)."""
    first = connections[0]
    A = first.algebra
    m = first.dim
    coeffs = tuple(
        el.lincomb(weights, [c.coefficients[a] for c in connections], m, m, A.zero)
        for a in range(A.der.dim)
    )
    return Connection(A, first.target, coeffs, "combination")


# ----------------------------------------------------------------------------
# curvature


@dataclass(frozen=True, eq=False)
class Curvature:
    connection: Connection
    values: dict  # (a, b) with a < b -> matrix

    def pair(self, a: int, b: int) -> Matrix:
        if a == b:
            return _zero_matrix(self.connection.algebra, self.connection.dim)
        if a < b:
            return self.values[(a, b)]
        return el.scale(-1, self.values[(b, a)])

    def at(self, u: Sequence, v: Sequence) -> Matrix:
        A = self.connection.algebra
        m = self.connection.dim
        out = _zero_matrix(A, m)
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y and a != b:
                    out = el.add(out, el.scale(x * y, self.pair(a, b)))
        return out

    @property
    def is_flat(self) -> bool:
        return all(el.is_zero(R) for R in self.values.values())


def curvature(nabla: Connection) -> Curvature:
    """``R_{X,Y} = [nabla_X, nabla_Y] - nabla_{[X,Y]}``."""
    A = nabla.algebra
    sc = A.der.structure_constants
    N = nabla.coefficients
    vals = {}
    d = A.der.dim
    for a in range(d):
        for b in range(a + 1, d):
            R = el.sub(el.matmul(N[a], N[b], A.zero), el.matmul(N[b], N[a], A.zero))
            R = el.sub(R, nabla.along(sc[a][b]))
            vals[(a, b)] = R
    return Curvature(nabla, vals)


def validate_curvature(R: Curvature) -> Report:
    nabla = R.connection
    A = nabla.algebra
    T = nabla.target
    rep = Report("curvature")
    d = A.der.dim
    ZA = A.der.center_action
    zm = _target_center_mats(A, T)
    bad_z, bad_e = [], []
    for a in range(d):
        for b in range(d):
            Rab = R.pair(a, b)
            for j, Zj in enumerate(zm):
                lhs = R.at(tuple(ZA[j][c][a] for c in range(d)), tuple(A.one if c == b else A.zero for c in range(d)))
                if lhs != el.matmul(Zj, Rab, A.zero):
                    bad_z.append((a, b, j))
            mats = T.left + T.right if isinstance(T, Bimodule) else T.center_action
            for S in mats:
                if el.matmul(S, Rab, A.zero) != el.matmul(Rab, S, A.zero):
                    bad_e.append((a, b))
                    break
    rep.check("antisymmetric", all(R.pair(a, b) == el.scale(-1, R.pair(b, a)) for a in range(d) for b in range(d)))
    rep.check("Z-bilinear", not bad_z, str(bad_z[:3]) if bad_z else "")
    rep.check("values are module endomorphisms", not bad_e, str(bad_e[:3]) if bad_e else "")
    return rep


def bianchi_check(nabla: Connection, R: Optional[Curvature] = None) -> Report:
    """``sum_cyc [nabla_X, R_{Y,Z}] = sum_cyc R_{[X,Y],Z}`` on every ordered basis triple."""
    A = nabla.algebra
    R = R or curvature(nabla)
    sc = A.der.structure_constants
    d = A.der.dim
    N = nabla.coefficients
    zero = A.zero
    bad = []
    for a in range(d):
        for b in range(d):
            for c in range(d):
                lhs = None
                rhs = None
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    Ryz = R.pair(y, z)
                    term = el.sub(el.matmul(N[x], Ryz, zero), el.matmul(Ryz, N[x], zero))
                    lhs = term if lhs is None else el.add(lhs, term)
                    e_z = tuple(A.one if k == z else zero for k in range(d))
                    t2 = R.at(sc[x][y], e_z)
                    rhs = t2 if rhs is None else el.add(rhs, t2)
                if d and nabla.dim and lhs != rhs:
                    bad.append((a, b, c))
    rep = Report("Bianchi identity")
    rep.check("Bianchi identity on all basis triples", not bad, f"fails at {bad[:3]}" if bad else "")
    return rep


# ----------------------------------------------------------------------------
# forms with values in the target


def module_calculus(nabla: Connection) -> Calculus:
    if not isinstance(nabla.target, Bimodule):
        raise UnsupportedOperation("form-valued extension needs a bimodule target")
    return Calculus(nabla.algebra, nabla.target)


def extend_to_forms(nabla: Connection, phi: Form) -> Form:
    """Covariant differential of an ``M``-valued form."""
    return module_calculus(nabla).covariant_d(phi, nabla.coefficients)


# ----------------------------------------------------------------------------
# constructions


def direct_sum(n1: Connection, n2: Connection) -> Connection:
    A = n1.algebra
    M = bimodule_direct_sum(n1.target, n2.target)
    coeffs = tuple(el.block_diag([a, b], A.zero) for a, b in zip(n1.coefficients, n2.coefficients))
    return Connection(A, M, coeffs, f"{n1.name}+{n2.name}")


def _tensor_connection(A, n1, n2, T):
    Q = T.realization.quotient
    I1 = el.identity(n1.dim, A.one, A.zero)
    I2 = el.identity(n2.dim, A.one, A.zero)
    coeffs = []
    for a in range(A.der.dim):
        big = el.add(el.kron(n1.coefficients[a], I2, A.zero), el.kron(I1, n2.coefficients[a], A.zero))
        if not Q.sub.is_stable(big):
            raise InvariantError(f"tensor relations not stable under nabla_{a}")
        coeffs.append(Q.induced(big))
    return Connection(A, T, tuple(coeffs), f"{n1.name}(x){n2.name}")


def tensor_over_A(n1: Connection, n2: Connection) -> Connection:
    """``nabla (x) 1 + 1 (x) nabla'`` on ``M (x)_A N``."""
    A = n1.algebra
    return _tensor_connection(A, n1, n2, bimodule_tensor_over_A(A, n1.target, n2.target))


def tensor_over_Z(n1: Connection, n2: Connection) -> Connection:
    A = n1.algebra
    return _tensor_connection(A, n1, n2, bimodule_tensor_over_Z(A, n1.target, n2.target))


@dataclass(frozen=True, eq=False)
class TensorAlgebraConnection:
    """Connections on ``M^{(x)k}``, ``k = 0..n_max``; degree 0 is A."""

    degrees: tuple  # Connection per degree
    total: Connection  # on the direct sum

    def leibniz_report(self) -> Report:
        """``nabla(t m) = nabla(t) m + t nabla(m)`` for ``t`` in degree ``k`` and ``m`` in M."""
        rep = Report("tensor algebra Leibniz")
        A = self.total.algebra
        n1 = self.degrees[1]
        M = n1.target
        for k in range(1, len(self.degrees) - 1):
            nk, nk1 = self.degrees[k], self.degrees[k + 1]
            real = nk1.target.realization
            ok = True
            for a in range(A.der.dim):
                for p in range(nk.dim):
                    t = nk.target.basis_vector(p)
                    for q in range(M.dim):
                        m_ = M.basis_vector(q)
                        lhs = el.matvec(nk1.coefficients[a], real.class_of(t, m_), A.zero)
                        rhs = el.vadd(
                            real.class_of(nk.apply(a, t), m_),
                            real.class_of(t, n1.apply(a, m_)),
                        )
                        if lhs != rhs:
                            ok = False
            rep.check(f"Leibniz from degree {k} to {k + 1}", ok)
        n0 = self.degrees[0]
        rep.check("degree 0 is the canonical connection", n0.coefficients == A.der.basis)
        return rep


def tensor_algebra(nabla: Connection, n_max: int) -> TensorAlgebraConnection:
    A = nabla.algebra
    degs = [canonical_connection(A)]
    if n_max >= 1:
        degs.append(nabla)
    for _ in range(2, n_max + 1):
        degs.append(tensor_over_A(degs[-1], nabla))
    total = degs[0]
    for c in degs[1:]:
        total = direct_sum(total, c)
    return TensorAlgebraConnection(tuple(degs), total)


def induced(nabla: Connection, sub: Subspace):
    """Restriction and quotient connections, or :class:`NotStable`."""
    M = nabla.target
    if not isinstance(M, Bimodule):
        raise UnsupportedOperation("induced connections are implemented for bimodules")
    if not is_sub_bimodule(M, sub):
        raise PreconditionError("subspace is not a subbimodule")
    for a, N in enumerate(nabla.coefficients):
        if not sub.is_stable(N):
            return NotStable(a)
    A = nabla.algebra
    S_mod = sub_bimodule(M, sub)
    Q_mod, Q = quotient_bimodule(M, sub)
    restricted = Connection(A, S_mod, tuple(sub.map_matrix(N) for N in nabla.coefficients), "restricted")
    quotient = Connection(A, Q_mod, tuple(Q.induced(N) for N in nabla.coefficients), "quotient")
    if sub.dim == 0:
        restricted = Connection(A, S_mod, tuple(() for _ in nabla.coefficients), "restricted")
    if Q.dim == 0:
        quotient = Connection(A, Q_mod, tuple(() for _ in nabla.coefficients), "quotient")
    return restricted, quotient


def gauge_transform(nabla: Connection, g: Matrix) -> Connection:
    """``X -> g nabla_X g^-1`` for an invertible bimodule endomorphism ``g``."""
    A = nabla.algebra
    M = nabla.target
    if isinstance(M, Bimodule):
        if not hom_AA(A, M, M).contains(g):
            raise PreconditionError("g is not a bimodule endomorphism")
    try:
        gi = el.inverse(g)
    except ValueError:
        raise PreconditionError("gauge transformation must be invertible") from None
    coeffs = tuple(el.matmul(el.matmul(g, N, A.zero), gi, A.zero) for N in nabla.coefficients)
    return Connection(A, M, coeffs, f"gauge({nabla.name})")


# ----------------------------------------------------------------------------
# dual connections


def _dual_coefficients(A: Algebra, nabla: Connection, H) -> tuple:
    """Matrices of ``mu -> X o mu - mu o nabla_X`` on the hom space ``H``."""
    coeffs = []
    for a, X in enumerate(A.der.basis):
        cols = []
        for mu in H.maps:
            img = el.sub(el.matmul(X, mu, A.zero), el.matmul(mu, nabla.coefficients[a], A.zero))
            if not H.contains(img):
                raise InvariantError("dual connection leaves the dual module")
            cols.append(H.coords(img))
        coeffs.append(el.transpose(cols) if cols else ())
    return tuple(coeffs)


def dual_connection(nabla: Connection) -> Connection:
    """Connection on the Z-module ``M^{*_A}`` of a bimodule connection."""
    A = nabla.algebra
    if not isinstance(nabla.target, Bimodule):
        raise TypeError("dual_connection expects a bimodule connection; use dual_connection_z")
    D = dual_bimodule(A, nabla.target)
    return Connection(A, D, _dual_coefficients(A, nabla, D.realization), f"{nabla.name}*")


def dual_connection_z(nabla: Connection) -> Connection:
    """Connection on the bimodule ``N^{*_A}`` of a Z-module connection."""
    A = nabla.algebra
    if not isinstance(nabla.target, ZModule):
        raise TypeError("dual_connection_z expects a Z-module connection; use dual_connection")
    D = dual_zmodule(A, nabla.target)
    return Connection(A, D, _dual_coefficients(A, nabla, D.realization), f"{nabla.name}*")


def _dual(nabla: Connection) -> Connection:
    return dual_connection(nabla) if isinstance(nabla.target, Bimodule) else dual_connection_z(nabla)


def dual_compatibility_report(nabla: Connection, dual: Optional[Connection] = None) -> Report:
    """``X(mu(m)) = (nabla_X mu)(m) + mu(nabla_X m)`` on all basis pairs."""
    A = nabla.algebra
    dual = dual or _dual(nabla)
    H = dual.target.realization
    bad = []
    for a, X in enumerate(A.der.basis):
        for k, mu in enumerate(H.maps):
            e_k = tuple(A.one if i == k else A.zero for i in range(H.dim))
            nmu = H.map(el.matvec(dual.coefficients[a], e_k, A.zero))
            for p in range(nabla.dim):
                m_ = nabla.target.basis_vector(p)
                lhs = el.matvec(X, el.matvec(mu, m_, A.zero), A.zero)
                rhs = el.vadd(el.matvec(nmu, m_, A.zero), el.matvec(mu, nabla.apply(a, m_), A.zero))
                if lhs != rhs:
                    bad.append((a, k, p))
    rep = Report("dual connection")
    rep.check("dual compatibility on all basis pairs", not bad, str(bad[:3]) if bad else "")
    rep.extend(validate_connection(dual), "dual: ")
    return rep


def double_dual_report(nabla: Connection) -> Report:
    """For reflexive targets: ``c_M nabla_X = nabla**_X c_M``."""
    A = nabla.algebra
    rep = Report("double dual")
    flags = canonical_map_and_flags(A, nabla.target)
    rep.check("target is reflexive", flags.reflexive)
    if not flags.reflexive:
        return rep
    dd = _dual(_dual(nabla))
    c = flags.canonical_map
    ok = all(
        el.matmul(c, N, A.zero) == el.matmul(M2, c, A.zero)
        for N, M2 in zip(nabla.coefficients, dd.coefficients)
    )
    rep.check("double dual connection equals the original under c_M", ok)
    return rep


# ----------------------------------------------------------------------------
# torsion


@dataclass(frozen=True, eq=False)
class LinearTorsion:
    """Torsion of a connection on the Z-linear one-forms."""

    connection: Connection
    interior: Matrix  # i_T: Omega1 coords -> Omega2 coords
    values: tuple  # T(e_i) as two-forms
    source: Bimodule
    target: Bimodule
    report: Report

    @property
    def is_zero(self) -> bool:
        return el.is_zero(self.interior)

    def apply(self, w: Form) -> Form:
        S = self.source.realization
        T = self.target.realization
        return T.form(el.matvec(self.interior, S.coords(w), self.connection.algebra.zero))


def _require_omega1(nabla: Connection) -> tuple:
    M = nabla.target
    real = getattr(M, "realization", None)
    A = nabla.algebra
    ok = isinstance(M, Bimodule) and isinstance(real, FormRealization) and real.degree == 1
    if ok:
        ok = real.space == calculus(A).underline(1) and real.calculus.is_scalar
    if not ok:
        raise PreconditionError("torsion_linear needs a connection on the Z-linear one-forms")
    return M, real


def mu_of(nabla: Connection, w: Form) -> Form:
    """``mu(nabla w)(X, Y) = (nabla_X w)(Y) - (nabla_Y w)(X)``."""
    M, real = _require_omega1(nabla)
    A = nabla.algebra
    calc = real.calculus
    c = real.coords(w)
    dw = [real.form(el.matvec(N, c, A.zero)) for N in nabla.coefficients]
    return calc.from_function(2, lambda t: el.vsub(calc.value(dw[t[0]], (t[1],)), calc.value(dw[t[1]], (t[0],))))


def torsion_linear(nabla: Connection) -> LinearTorsion:
    """``i_T = d - mu o nabla`` on one-forms and ``T = i_T o d`` on A."""
    M, real = _require_omega1(nabla)
    A = nabla.algebra
    calc = real.calculus
    O2 = calc.value_bimodule(2, name="Omega2")
    S2 = O2.realization
    cols = []
    rep = Report("linear torsion")
    inside = True
    for k in range(M.dim):
        w = real.form(tuple(A.one if i == k else A.zero for i in range(M.dim)))
        iw = calc.differential(w) - mu_of(nabla, w)
        if not S2.space.contains(iw.values):
            inside = False
            break
        cols.append(S2.coords(iw))
    rep.check("i_T maps into Z-linear two-forms", inside)
    if not inside:
        return LinearTorsion(nabla, (), (), M, O2, rep)
    iT = el.transpose(cols) if cols else tuple(() for _ in range(O2.dim))
    values = []
    for i in range(A.dim):
        de = calc.exact(A.basis_vector(i))
        values.append(S2.form(el.matvec(iT, real.coords(de), A.zero)) if M.dim else calc.zero_form(2))
    # T(a) = -mu(nabla(da)) and i_T(da) = d(da) - mu(nabla da) = -mu(nabla da)
    rep.check(
        "T = -mu o nabla o d",
        all(values[i] == (calc.zero_form(2) - mu_of(nabla, calc.exact(A.basis_vector(i)))) for i in range(A.dim)),
    )
    bad = []
    for i in range(A.dim):
        for j in range(A.dim):
            ab = A.multiply(A.basis_vector(i), A.basis_vector(j))
            t_ab = _lincomb_forms(A, ab, values, calc)
            rhs = O2_act(calc, values[i], A.basis_vector(j), right=True) + O2_act(calc, values[j], A.basis_vector(i), right=False)
            if t_ab != rhs:
                bad.append((i, j))
    rep.check("T(ab) = T(a)b + aT(b)", not bad, str(bad[:3]) if bad else "")
    hom_ok = all(
        el.matmul(iT, L1, A.zero) == el.matmul(L2, iT, A.zero)
        for L1, L2 in zip(M.left + M.right, O2.left + O2.right)
    ) if M.dim and O2.dim else True
    rep.check("i_T is a bimodule homomorphism", hom_ok)
    return LinearTorsion(nabla, iT, tuple(values), M, O2, rep)


def O2_act(calc: Calculus, w: Form, a, right: bool) -> Form:
    aform = Form(0, tuple(a), calc.A.dim)
    return calc.scalar_wedge(w, aform) if right else calc.scalar_wedge(aform, w)


def _lincomb_forms(A, coeffs, forms, calc):
    out = calc.zero_form(2)
    for c, w in zip(coeffs, forms):
        if c:
            out = out + w.scaled(c)
    return out


@dataclass(frozen=True, eq=False)
class DerTorsion:
    connection: Connection
    values: dict  # (a, b), a < b -> Der coordinates of T_{X_a, X_b}

    @property
    def is_zero(self) -> bool:
        return all(el.is_zero(v) for v in self.values.values())

    def pair(self, a, b):
        A = self.connection.algebra
        if a == b:
            return (A.zero,) * A.der.dim
        return self.values[(a, b)] if a < b else el.vscale(-1, self.values[(b, a)])


def torsion_on_der(nabla: Connection) -> DerTorsion:
    """``T_{X,Y} = nabla_X Y - nabla_Y X - [X, Y]`` for a connection on Der(A)."""
    A = nabla.algebra
    D = A.der
    if not isinstance(nabla.target, ZModule) or nabla.target.dim != D.dim:
        raise PreconditionError("torsion_on_der needs a connection on Der(A)")
    N = nabla.coefficients
    vals = {}
    for a in range(D.dim):
        for b in range(a + 1, D.dim):
            col_ab = tuple(N[a][r][b] for r in range(D.dim))
            col_ba = tuple(N[b][r][a] for r in range(D.dim))
            vals[(a, b)] = el.vsub(el.vsub(col_ab, col_ba), D.structure_constants[a][b])
    return DerTorsion(nabla, vals)


def torsion_cross_check(nabla: Connection) -> Report:
    """``i_T(w)(X, Y) = w(T_{X,Y})`` for the dual linear connection of ``nabla`` on Der."""
    A = nabla.algebra
    rep = Report("torsion duality cross-check")
    T = torsion_on_der(nabla)
    dual = dual_connection_z(nabla)
    O = omega1_underline(A)
    rep.check("Der^*A and one-forms share coordinates", dual.target.realization.space == O.realization.space)
    lin = torsion_linear(dual.on(O))
    real = O.realization
    calc = real.calculus
    ok = True
    d = A.der.dim
    for k in range(O.dim):
        w = real.form(tuple(A.one if i == k else A.zero for i in range(O.dim)))
        iw = lin.apply(w)
        for a in range(d):
            for b in range(a + 1, d):
                if calc.value(iw, (a, b)) != calc.value_at(w, [T.pair(a, b)]):
                    ok = False
    rep.check("i_T(w)(X,Y) = w(T_{X,Y})", ok)
    rep.check("torsion-free on Der iff torsion-free on one-forms", T.is_zero == lin.is_zero)
    return rep


# ----------------------------------------------------------------------------
# reality and compatibility


def _star(T: Target, v):
    if T.involution is None:
        raise UnsupportedOperation(f"{T.name} has no involution")
    return T.involution.apply(v)


def is_real_connection(nabla: Connection) -> bool:
    """``(nabla_X m)* = nabla_{X*}(m*)`` on basis elements."""
    A = nabla.algebra
    T = nabla.target
    if A.involution is None or T.involution is None:
        raise UnsupportedOperation("reality needs involutions on A and the target")
    J = A.der.star_matrix
    d = A.der.dim
    for a in range(d):
        Xs = tuple(J[b][a] for b in range(d))
        Ns = nabla.along(Xs)
        for p in range(T.dim):
            m_ = T.basis_vector(p)
            if _star(T, nabla.apply(a, m_)) != el.matvec(Ns, _star(T, m_), A.zero):
                return False
    return True


def is_compatible(nabla: Connection, g) -> bool:
    """``X(g(m, n)) = g(nabla_X m, n) + g(m, nabla_X n)``; ``g`` has ``.value(m, n)``."""
    A = nabla.algebra
    T = nabla.target
    for a, X in enumerate(A.der.basis):
        for p in range(T.dim):
            mp = T.basis_vector(p)
            nmp = nabla.apply(a, mp)
            for q in range(T.dim):
                mq = T.basis_vector(q)
                lhs = el.matvec(X, g.value(mp, mq), A.zero)
                rhs = el.vadd(g.value(nmp, mq), g.value(mp, nabla.apply(a, mq)))
                if lhs != rhs:
                    return False
    return True


def gauge_diagnostics(n1: Connection, n2: Connection) -> dict:
    """Difference element and curvature comparison of two connections on one target.

    This does not decide gauge equivalence.
    """
    diff = n1.difference(n2)
    R1, R2 = curvature(n1), curvature(n2)
    return {
        "difference_is_zero": all(el.is_zero(x) for x in diff),
        "first_flat": R1.is_flat,
        "second_flat": R2.is_flat,
        "gauge_equivalence": "not decided",
    }
