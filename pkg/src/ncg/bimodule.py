"""Central bimodules, Z(A)-modules, their duals and tensor products.

A :class:`Bimodule` over ``A`` is a finite-dimensional space with one left
and one right action matrix per algebra basis element.  A :class:`ZModule`
carries one action matrix per basis element of the center Z(A).

Spaces of maps are realised as subspaces of column-major flattened matrices
(see :func:`ncg.exactlin.flatten`), so ``f`` has ``f(basis_k)`` in slots
``k*rows .. (k+1)*rows``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Any, Optional, Sequence

from . import exactlin as el
from .algebra import Algebra, Involution, PreconditionError, UnsupportedOperation
from .exactlin import Matrix, Quotient, Subspace, Vector
from .report import Report


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: Algebra
    dim: int
    left: tuple
    right: tuple
    involution: Optional[Involution] = None
    name: str = ""
    # how elements are realised (e.g. as maps or forms); None for abstract modules
    realization: Any = dc_field(default=None, compare=False)

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim})"

    @property
    def zero(self):
        return self.algebra.zero

    def basis_vector(self, p: int) -> Vector:
        A = self.algebra
        return tuple(A.one if k == p else A.zero for k in range(self.dim))

    def left_mat(self, a: Sequence) -> Matrix:
        return el.lincomb(a, self.left, self.dim, self.dim, self.zero)

    def right_mat(self, b: Sequence) -> Matrix:
        return el.lincomb(b, self.right, self.dim, self.dim, self.zero)

    def act(self, a: Sequence, m: Sequence, b: Sequence) -> Vector:
        """``a m b``."""
        return el.matvec(self.left_mat(a), el.matvec(self.right_mat(b), m, self.zero), self.zero)

    def star(self, m: Sequence) -> Vector:
        if self.involution is None:
            raise UnsupportedOperation(f"bimodule {self.name!r} has no involution")
        return self.involution.apply(m)

    @cached_property
    def identity(self) -> Matrix:
        return el.identity(self.dim, self.algebra.one, self.zero)


@dataclass(frozen=True, eq=False)
class ZModule:
    algebra: Algebra
    dim: int
    center_action: tuple
    involution: Optional[Involution] = None
    name: str = ""
    realization: Any = dc_field(default=None, compare=False)

    def __repr__(self):
        return f"ZModule({self.name or '?'}, dim={self.dim})"

    @property
    def zero(self):
        return self.algebra.zero

    def basis_vector(self, p: int) -> Vector:
        A = self.algebra
        return tuple(A.one if k == p else A.zero for k in range(self.dim))

    def center_mat(self, zc: Sequence) -> Matrix:
        """Action of the center element with center coordinates ``zc``."""
        return el.lincomb(zc, self.center_action, self.dim, self.dim, self.zero)

    def star(self, n: Sequence) -> Vector:
        if self.involution is None:
            raise UnsupportedOperation(f"module {self.name!r} has no involution")
        return self.involution.apply(n)

    @cached_property
    def identity(self) -> Matrix:
        return el.identity(self.dim, self.algebra.one, self.zero)


# ----------------------------------------------------------------------------
# constructors


def regular_bimodule(A: Algebra) -> Bimodule:
    """A as a bimodule over itself."""
    return Bimodule(A, A.dim, A.left_mats, A.right_mats, A.involution, name="A")


def center_zmodule(A: Algebra) -> ZModule:
    """Z(A) as a module over itself, in center coordinates."""
    Z = A.center_space
    mats = []
    for Lz in A.center_mats:
        cols = [Z.coords(el.matvec(Lz, w, A.zero)) for w in Z.basis]
        mats.append(el.transpose(cols) if cols else ())
    inv = None
    if A.involution is not None:
        cols = [Z.coords(A.star(w)) for w in Z.basis]
        inv = Involution(el.transpose(cols) if cols else (), A.involution.conjugate)
    return ZModule(A, Z.dim, tuple(mats), inv, name="Z(A)")


def derivation_zmodule(A: Algebra) -> ZModule:
    """Der(A) as a Z(A)-module, with ``X* (a) = (X(a*))*`` when A is involutive."""
    D = A.der
    inv = None
    if A.involution is not None and D.dim:
        inv = Involution(D.star_matrix, A.involution.conjugate)
    elif A.involution is not None:
        inv = Involution((), A.involution.conjugate)
    return ZModule(A, D.dim, D.center_action, inv, name="Der(A)", realization=D)


def zero_bimodule(A: Algebra) -> Bimodule:
    n = A.dim
    return Bimodule(A, 0, ((),) * n, ((),) * n, name="0")


def direct_sum(M: Bimodule, N: Bimodule) -> Bimodule:
    A = M.algebra
    left = tuple(el.block_diag([a, b], A.zero) for a, b in zip(M.left, N.left))
    right = tuple(el.block_diag([a, b], A.zero) for a, b in zip(M.right, N.right))
    inv = None
    if M.involution is not None and N.involution is not None:
        if M.involution.conjugate != N.involution.conjugate:
            raise ValueError("incompatible involution types")
        inv = Involution(
            el.block_diag([M.involution.matrix, N.involution.matrix], A.zero), M.involution.conjugate
        )
    return Bimodule(A, M.dim + N.dim, left, right, inv, name=f"({M.name}+{N.name})")


def character_bimodule(A: Algebra, chi_left: Sequence, chi_right: Sequence, name="") -> Bimodule:
    """One-dimensional bimodule ``a m b = chi_left(a) chi_right(b) m``.

    ``chi_left`` and ``chi_right`` list the values of two algebra characters
    on the basis.  Central whenever the characters agree on Z(A).
    """
    K = A.field
    left = tuple(((K(c),),) for c in chi_left)
    right = tuple(((K(c),),) for c in chi_right)
    return Bimodule(A, 1, left, right, name=name or "chi")


def sub_bimodule(M: Bimodule, S: Subspace, name: str = "", realization=None) -> Bimodule:
    """Bimodule structure on a stable subspace, in its echelon coordinates."""
    left = tuple(S.map_matrix(Lm) for Lm in M.left)
    right = tuple(S.map_matrix(Rm) for Rm in M.right)
    inv = None
    if M.involution is not None:
        inv = _restrict_involution(M.involution, S)
    return Bimodule(M.algebra, S.dim, left, right, inv, name or f"sub({M.name})", realization)


def quotient_bimodule(M: Bimodule, S: Subspace, name: str = "") -> tuple[Bimodule, Quotient]:
    Q = Quotient.of(Subspace.full(M.dim, M.algebra.one, M.zero), S)
    left = tuple(Q.induced(Lm) for Lm in M.left)
    right = tuple(Q.induced(Rm) for Rm in M.right)
    return Bimodule(M.algebra, Q.dim, left, right, None, name or f"quot({M.name})", Q), Q


def _restrict_involution(inv: Involution, S: Subspace) -> Optional[Involution]:
    cols = []
    for b in S.basis:
        img = inv.apply(b)
        if not S.contains(img):
            return None
        cols.append(S.coords(img))
    return Involution(el.transpose(cols) if cols else (), inv.conjugate)


def generated_sub_bimodule(M: Bimodule, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest subbimodule containing ``vectors``."""
    S = Subspace.span(vectors, M.dim, M.zero)
    while True:
        new = list(S.basis)
        for b in S.basis:
            for Lm in M.left:
                new.append(el.matvec(Lm, b, M.zero))
            for Rm in M.right:
                new.append(el.matvec(Rm, b, M.zero))
        T = Subspace.span(new, M.dim, M.zero)
        if T == S:
            return S
        S = T


def is_sub_bimodule(M: Bimodule, S: Subspace) -> bool:
    return all(S.is_stable(m) for m in M.left + M.right)


# ----------------------------------------------------------------------------
# validation


def validate_bimodule(A: Algebra, M: Bimodule) -> Report:
    rep = Report(f"bimodule {M.name}")
    n = A.dim
    if len(M.left) != n or len(M.right) != n:
        raise ValueError("bimodule must have one action matrix per algebra basis element")
    for mats in (M.left, M.right):
        for m in mats:
            if M.dim and el.shape(m) != (M.dim, M.dim):
                raise ValueError("action matrices must be dim x dim")
    I = M.identity
    rep.check("unit acts as identity on the left", M.left_mat(A.unit) == I)
    rep.check("unit acts as identity on the right", M.right_mat(A.unit) == I)
    bad_l, bad_r, bad_c = [], [], []
    for i in range(n):
        for j in range(n):
            eij = A.multiply(A.basis_vector(i), A.basis_vector(j))
            if M.left_mat(eij) != el.matmul(M.left[i], M.left[j], M.zero):
                bad_l.append((i, j))
            if M.right_mat(eij) != el.matmul(M.right[j], M.right[i], M.zero):
                bad_r.append((i, j))
            if el.matmul(M.left[i], M.right[j], M.zero) != el.matmul(M.right[j], M.left[i], M.zero):
                bad_c.append((i, j))
    rep.check("left action is a representation", not bad_l, _pairs(bad_l))
    rep.check("right action is an anti-representation", not bad_r, _pairs(bad_r))
    rep.check("actions must commute", not bad_c, _pairs(bad_c))
    if M.involution is not None:
        if A.involution is None:
            rep.check("involution needs an involutive algebra", False)
        else:
            J = M.involution
            rep.check("bimodule involution is involutive", J.is_involutive())
            bad = []
            for i in range(n):
                es = A.star(A.basis_vector(i))
                # (e_i m)* = m* e_i*  and (m e_i)* = e_i* m*
                lhs_l = el.matmul(J.matrix, el.conj_matrix(M.left[i]) if J.conjugate else M.left[i])
                rhs_l = el.matmul(M.right_mat(es), J.matrix)
                lhs_r = el.matmul(J.matrix, el.conj_matrix(M.right[i]) if J.conjugate else M.right[i])
                rhs_r = el.matmul(M.left_mat(es), J.matrix)
                if lhs_l != rhs_l or lhs_r != rhs_r:
                    bad.append(i)
            rep.check("(amb)* = b* m* a*", not bad, f"fails for basis {bad}" if bad else "")
    return rep


def validate_zmodule(A: Algebra, N: ZModule) -> Report:
    rep = Report(f"Z-module {N.name}")
    Z = A.center_space
    if len(N.center_action) != Z.dim:
        raise ValueError("Z-module needs one matrix per center basis element")
    unit_c = Z.coords(A.unit)
    rep.check("1 acts as identity", N.center_mat(unit_c) == N.identity)
    bad = []
    for j, zj in enumerate(Z.basis):
        for k, zk in enumerate(Z.basis):
            prod = Z.coords(A.multiply(zj, zk))
            if N.center_mat(prod) != el.matmul(N.center_action[j], N.center_action[k], N.zero):
                bad.append((j, k))
    rep.check("z(z'n) = (zz')n", not bad, _pairs(bad))
    if N.involution is not None and N.dim:
        J = N.involution
        rep.check("involution is involutive", J.is_involutive())
        bad = []
        for j, zj in enumerate(Z.basis):
            zs = Z.coords(A.star(zj))
            lhs = el.matmul(J.matrix, el.conj_matrix(N.center_action[j]) if J.conjugate else N.center_action[j])
            rhs = el.matmul(N.center_mat(zs), J.matrix)
            if lhs != rhs:
                bad.append(j)
        rep.check("(zn)* = z* n*", not bad)
    return rep


def _pairs(bad):
    return "" if not bad else "failing basis pairs " + ", ".join(map(str, bad[:5]))


def is_central(A: Algebra, M: Bimodule) -> bool:
    """Left and right multiplication by central elements coincide."""
    return all(M.left_mat(z) == M.right_mat(z) for z in A.center_space.basis)


# ----------------------------------------------------------------------------
# hom spaces


def intertwiner_rows(pairs: Sequence[tuple[Matrix, Matrix]], src_dim: int, tgt_dim: int) -> list[dict]:
    """Rows for ``f S = T f`` over all ``(S, T)`` pairs; ``f`` is ``tgt x src`` flattened."""
    rows = []
    for S, T in pairs:
        for r in range(tgt_dim):
            for k in range(src_dim):
                row: dict = {}
                # (f S)[r][k] = sum_p f[r][p] S[p][k]
                for p in range(src_dim):
                    s = S[p][k]
                    if s:
                        col = p * tgt_dim + r
                        row[col] = row.get(col, 0) + s
                # (T f)[r][k] = sum_q T[r][q] f[q][k]
                Tr = T[r]
                for q in range(tgt_dim):
                    t = Tr[q]
                    if t:
                        col = k * tgt_dim + q
                        row[col] = row.get(col, 0) - t
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


@dataclass(frozen=True, eq=False)
class HomSpace:
    """Subspace of linear maps ``source -> target`` (``target_dim x source_dim``)."""

    source_dim: int
    target_dim: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def maps(self) -> tuple:
        return tuple(el.unflatten(v, self.target_dim, self.source_dim) for v in self.space.basis)

    def coords(self, f: Matrix) -> Vector:
        return self.space.coords(el.flatten(f))

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(el.flatten(f))

    def map(self, c: Sequence) -> Matrix:
        return el.unflatten(self.space.from_coords(c), self.target_dim, self.source_dim)


def _hom(pairs, src_dim, tgt_dim, zero) -> HomSpace:
    rows = intertwiner_rows(pairs, src_dim, tgt_dim)
    return HomSpace(src_dim, tgt_dim, el.kernel_sparse(rows, src_dim * tgt_dim, zero))


def hom_AA(A: Algebra, M: Bimodule, N: Bimodule) -> HomSpace:
    """Bimodule homomorphisms ``M -> N``."""
    pairs = list(zip(M.left, N.left)) + list(zip(M.right, N.right))
    return _hom(pairs, M.dim, N.dim, A.zero)


def hom_Z(A: Algebra, N: ZModule, P: ZModule) -> HomSpace:
    return _hom(list(zip(N.center_action, P.center_action)), N.dim, P.dim, A.zero)


def hom_Z_to_A(A: Algebra, N: ZModule) -> HomSpace:
    """Z(A)-linear maps ``N -> A``."""
    return _hom(list(zip(N.center_action, A.center_mats)), N.dim, A.dim, A.zero)


def _cols_matrix(cols):
    return el.transpose(cols) if cols else ()


def dual_bimodule(A: Algebra, M: Bimodule) -> ZModule:
    """``M^{*_A} = hom^A_A(M, A)`` with Z(A) acting by post-multiplication."""
    if not is_central(A, M):
        raise PreconditionError("the bimodule dual is defined here for central bimodules")
    H = hom_AA(A, M, regular_bimodule(A))
    mats = []
    for Lz in A.center_mats:
        mats.append(_cols_matrix([H.coords(el.matmul(Lz, f, A.zero)) for f in H.maps]))
    inv = None
    if M.involution is not None and A.involution is not None:
        inv = _dual_involution(A, H, M.involution)
    return ZModule(A, H.dim, tuple(mats), inv, name=f"{M.name}^*A", realization=H)


def dual_zmodule(A: Algebra, N: ZModule) -> Bimodule:
    """``N^{*_A} = hom_Z(N, A)`` with ``(a nu b)(n) = a nu(n) b``."""
    H = hom_Z_to_A(A, N)
    left = tuple(_cols_matrix([H.coords(el.matmul(Lm, f, A.zero)) for f in H.maps]) for Lm in A.left_mats)
    right = tuple(_cols_matrix([H.coords(el.matmul(Rm, f, A.zero)) for f in H.maps]) for Rm in A.right_mats)
    if not H.dim:
        left = right = ((),) * A.dim
    inv = None
    if N.involution is not None and A.involution is not None:
        inv = _dual_involution(A, H, N.involution)
    return Bimodule(A, H.dim, left, right, inv, name=f"{N.name}^*A", realization=H)


def _dual_involution(A: Algebra, H: HomSpace, src_inv: Involution) -> Involution:
    """``mu*(m) = (mu(m*))*`` on a space of maps into A."""
    S = A.involution
    if S.conjugate != src_inv.conjugate:
        raise ValueError("involutions of different types")
    cols = []
    for f in H.maps:
        if S.conjugate:
            g = el.matmul(el.matmul(S.matrix, el.conj_matrix(f)), el.conj_matrix(src_inv.matrix))
        else:
            g = el.matmul(el.matmul(S.matrix, f), src_inv.matrix)
        cols.append(H.coords(g))
    return Involution(_cols_matrix(cols), S.conjugate)


def involution_on_dual(A: Algebra, X) -> Involution:
    """Induced involution on ``M^{*_A}`` (for a bimodule) or ``N^{*_A}`` (for a Z-module)."""
    if X.involution is None or A.involution is None:
        raise UnsupportedOperation("input carries no involution")
    if isinstance(X, Bimodule):
        return dual_bimodule(A, X).involution
    return dual_zmodule(A, X).involution


def left_dual(A: Algebra, M: Bimodule) -> Bimodule:
    """``M' = hom^A(M, A)`` (right-linear maps) with ``(a.alpha.b)(m) = a alpha(b m)``."""
    H = _hom(list(zip(M.right, A.right_mats)), M.dim, A.dim, A.zero)
    left = tuple(_cols_matrix([H.coords(el.matmul(La, f, A.zero)) for f in H.maps]) for La in A.left_mats)
    right = tuple(_cols_matrix([H.coords(el.matmul(f, Lm, A.zero)) for f in H.maps]) for Lm in M.left)
    if not H.dim:
        left = right = ((),) * A.dim
    return Bimodule(A, H.dim, left, right, name=f"{M.name}'", realization=H)


# ----------------------------------------------------------------------------
# canonical maps into biduals


@dataclass
class DualityReport:
    pairing: tuple  # pairing[p][q] = <m_p, n_q> in A
    separated_in_M: bool
    separated_in_N: bool
    canonical_map: Matrix
    injective: bool
    surjective: bool

    @property
    def diagonal(self) -> bool:
        return self.injective

    @property
    def reflexive(self) -> bool:
        return self.injective and self.surjective


def _separated(pairing, rows_dim, cols_dim, adim, zero, first=True) -> bool:
    # kernel of m -> (<m, n_q>)_q or of n -> (<m_p, n>)_p
    if first:
        cols = [tuple(x for q in range(cols_dim) for x in pairing[p][q]) for p in range(rows_dim)]
        k = rows_dim
    else:
        cols = [tuple(x for p in range(rows_dim) for x in pairing[p][q]) for q in range(cols_dim)]
        k = cols_dim
    if k == 0:
        return True
    if not cols[0]:
        return k == 0
    return el.rank(tuple(cols)) == k


def canonical_map_and_flags(A: Algebra, M) -> DualityReport:
    """``c_M(m)(mu) = mu(m)`` into the bidual, with injectivity/surjectivity.

    Works for central bimodules (bidual through ``M^{*_A}``) and for
    Z-modules (bidual through ``N^{*_A}``).
    """
    if isinstance(M, Bimodule):
        D = dual_bimodule(A, M)
        DD = dual_zmodule(A, D)
    else:
        D = dual_zmodule(A, M)
        DD = dual_bimodule(A, D)
    H = D.realization
    HH = DD.realization
    pairing = tuple(
        tuple(el.matvec(mu, M.basis_vector(p), A.zero) for mu in H.maps) for p in range(M.dim)
    )
    cols = []
    for p in range(M.dim):
        # c(m_p) is the map D -> A sending mu_k to mu_k(m_p)
        cm = _cols_matrix([pairing[p][k] for k in range(D.dim)]) if D.dim else tuple(() for _ in range(A.dim))
        cols.append(HH.coords(cm))
    cmat = _cols_matrix(cols)
    r = el.rank(tuple(cols)) if cols and DD.dim else 0
    return DualityReport(
        pairing=pairing,
        separated_in_M=_separated(pairing, M.dim, D.dim, A.dim, A.zero, True),
        separated_in_N=_separated(pairing, M.dim, D.dim, A.dim, A.zero, False),
        canonical_map=cmat,
        injective=r == M.dim,
        surjective=r == DD.dim,
    )


def pairing_report(A: Algebra, M: Bimodule, N: ZModule, pairing: Sequence) -> Report:
    """Check a duality ``<,> : M (x)_Z N -> A`` and its separation."""
    rep = Report(f"duality {M.name} x {N.name}")
    Z = A.center_space

    def pair(m, n):
        out = A.zero_vector()
        for p, x in enumerate(m):
            if not x:
                continue
            for q, y in enumerate(n):
                if y:
                    out = el.vadd(out, el.vscale(x * y, pairing[p][q]))
        return out

    bad = []
    for i in range(A.dim):
        ei = A.basis_vector(i)
        for p in range(M.dim):
            mp = M.basis_vector(p)
            for q in range(N.dim):
                nq = N.basis_vector(q)
                if pair(el.matvec(M.left[i], mp, A.zero), nq) != A.multiply(ei, pairing[p][q]):
                    bad.append(("left", i, p, q))
                if pair(el.matvec(M.right[i], mp, A.zero), nq) != A.multiply(pairing[p][q], ei):
                    bad.append(("right", i, p, q))
    for j in range(Z.dim):
        for p in range(M.dim):
            mp = M.basis_vector(p)
            zm = el.matvec(M.left_mat(Z.basis[j]), mp, A.zero)
            for q in range(N.dim):
                zn = el.matvec(N.center_action[j], N.basis_vector(q), A.zero)
                if pair(zm, N.basis_vector(q)) != pair(mp, zn):
                    bad.append(("center", j, p, q))
    rep.check("pairing is a bimodule homomorphism out of M (x)_Z N", not bad, str(bad[:3]) if bad else "")
    rep.check("separated in M", _separated(pairing, M.dim, N.dim, A.dim, A.zero, True))
    rep.check("separated in N", _separated(pairing, M.dim, N.dim, A.dim, A.zero, False))
    return rep


# ----------------------------------------------------------------------------
# tensor products


@dataclass(frozen=True, eq=False)
class TensorRealization:
    """Records how a quotient of ``M (x) N`` was built, for pushing elements through."""

    first: Any
    second: Any
    quotient: Quotient

    def class_of(self, m: Sequence, n: Sequence) -> Vector:
        """Quotient coordinates of ``m (x) n``."""
        return self.quotient.project(pure_tensor(m, n))


def pure_tensor(m: Sequence, n: Sequence) -> Vector:
    """Coordinates of ``m (x) n`` in the basis ``m_p (x) n_q`` (index ``p*len(n) + q``)."""
    return tuple(x * y for x in m for y in n)


def _tensor_relations_A(M: Bimodule, N: Bimodule) -> list:
    rels = []
    zero = M.zero
    for Ri, Li in zip(M.right, N.left):
        for p in range(M.dim):
            mp = M.basis_vector(p)
            mpa = el.matvec(Ri, mp, zero)
            for q in range(N.dim):
                nq = N.basis_vector(q)
                v = el.vsub(pure_tensor(mpa, nq), pure_tensor(mp, el.matvec(Li, nq, zero)))
                if not el.is_zero(v):
                    rels.append(v)
    return rels


def _tensor_relations_Z(A: Algebra, M, N) -> list:
    rels = []
    zero = A.zero
    for j, z in enumerate(A.center_space.basis):
        Zm = M.right_mat(z) if isinstance(M, Bimodule) else M.center_action[j]
        Zn = N.left_mat(z) if isinstance(N, Bimodule) else N.center_action[j]
        for p in range(M.dim):
            mp = M.basis_vector(p)
            for q in range(N.dim):
                nq = N.basis_vector(q)
                v = el.vsub(pure_tensor(el.matvec(Zm, mp, zero), nq), pure_tensor(mp, el.matvec(Zn, nq, zero)))
                if not el.is_zero(v):
                    rels.append(v)
    return rels


def _pre_tensor_actions(M, N, zero):
    IM = el.identity(M.dim, M.algebra.one, zero)
    IN = el.identity(N.dim, M.algebra.one, zero)
    left = tuple(el.kron(Lm, IN, zero) for Lm in M.left)
    right = tuple(el.kron(IM, Rn, zero) for Rn in N.right)
    return left, right


def tensor_over_A(A: Algebra, M: Bimodule, N: Bimodule) -> Bimodule:
    """``M (x)_A N`` as an explicit quotient of ``M (x) N``."""
    dim = M.dim * N.dim
    rel = Subspace.span(_tensor_relations_A(M, N), dim, A.zero)
    Q = Quotient.of(Subspace.full(dim, A.one, A.zero), rel)
    left, right = _pre_tensor_actions(M, N, A.zero)
    qleft = tuple(Q.induced(m) for m in left)
    qright = tuple(Q.induced(m) for m in right)
    if not Q.dim:
        qleft = qright = ((),) * A.dim
    return Bimodule(A, Q.dim, qleft, qright, None, f"{M.name}(x)A{N.name}", TensorRealization(M, N, Q))


def tensor_over_Z(A: Algebra, M, N):
    """``M (x)_Z N``.  Bimodules give a bimodule; Z-modules give a Z-module."""
    dim = M.dim * N.dim
    rel = Subspace.span(_tensor_relations_Z(A, M, N), dim, A.zero)
    Q = Quotient.of(Subspace.full(dim, A.one, A.zero), rel)
    real = TensorRealization(M, N, Q)
    if isinstance(M, Bimodule) and isinstance(N, Bimodule):
        left, right = _pre_tensor_actions(M, N, A.zero)
        qleft = tuple(Q.induced(m) for m in left)
        qright = tuple(Q.induced(m) for m in right)
        if not Q.dim:
            qleft = qright = ((),) * A.dim
        return Bimodule(A, Q.dim, qleft, qright, None, f"{M.name}(x)Z{N.name}", real)
    if isinstance(M, ZModule) and isinstance(N, ZModule):
        IN = el.identity(N.dim, A.one, A.zero)
        mats = tuple(Q.induced(el.kron(Zm, IN, A.zero)) for Zm in M.center_action)
        return ZModule(A, Q.dim, mats, None, f"{M.name}(x)Z{N.name}", real)
    raise TypeError("tensor_over_Z needs two bimodules or two Z-modules")


# ----------------------------------------------------------------------------
# hermitian elements


def real_fixed_points(inv: Involution) -> Subspace:
    """Q-subspace of ``Q^{2m}`` (real parts, then imaginary parts) fixed by ``v -> J conj v``."""
    from fractions import Fraction

    from .field import GaussianRational

    J = inv.matrix
    m = len(J)

    def parts(x):
        if isinstance(x, GaussianRational):
            return x.real, x.imag
        return Fraction(x), Fraction(0)

    rows = []
    # J conj(u + iv) - (u + iv) = 0 ; conj(u + iv) = u - iv
    for r in range(m):
        re_row, im_row = {}, {}
        for k in range(m):
            a, b = parts(J[r][k])
            sgn = -1 if inv.conjugate else 1
            # (a + bi)(u_k + sgn i v_k) = (a u_k - sgn b v_k) + i (b u_k + sgn a v_k)
            for row, col, val in (
                (re_row, k, a),
                (re_row, m + k, -sgn * b),
                (im_row, k, b),
                (im_row, m + k, sgn * a),
            ):
                if val:
                    row[col] = row.get(col, 0) + val
        re_row[r] = re_row.get(r, 0) - 1
        im_row[m + r] = im_row.get(m + r, 0) - 1
        rows.append({c: v for c, v in re_row.items() if v})
        rows.append({c: v for c, v in im_row.items() if v})
    return el.kernel_sparse(rows, 2 * m, Fraction(0))


# ----------------------------------------------------------------------------
# JSON


def _tensor_from_mats(mats, f):
    # l[i][p][q] is the coefficient of m_q in e_i . m_p, i.e. mats[i][q][p]
    return [[[f(m[q][p]) for q in range(len(m))] for p in range(len(m))] for m in mats]


def _mats_from_tensor(t, parse):
    out = []
    for block in t:
        k = len(block)
        out.append(tuple(tuple(parse(block[p][q]) for p in range(k)) for q in range(k)))
    return tuple(out)


def _inv_to_json(inv, f):
    return {"matrix": [[f(x) for x in row] for row in inv.matrix], "conjugate": inv.conjugate}


def _inv_from_json(d, parse):
    if d is None:
        return None
    return Involution(tuple(tuple(parse(x) for x in row) for row in d["matrix"]), bool(d.get("conjugate")))


def bimodule_to_json(M: Bimodule) -> dict:
    f = M.algebra.field.format
    d = {"dim": M.dim, "left": _tensor_from_mats(M.left, f), "right": _tensor_from_mats(M.right, f)}
    if M.name:
        d["name"] = M.name
    if M.involution is not None:
        d["involution"] = _inv_to_json(M.involution, f)
    return d


def bimodule_from_json(A: Algebra, d: dict) -> Bimodule:
    p = A.field.parse
    dim = int(d["dim"])
    left = _mats_from_tensor(d["left"], p)
    right = _mats_from_tensor(d["right"], p)
    if dim == 0:
        left = right = ((),) * A.dim
    return Bimodule(A, dim, left, right, _inv_from_json(d.get("involution"), p), d.get("name", ""))


def zmodule_to_json(N: ZModule) -> dict:
    f = N.algebra.field.format
    d = {"dim": N.dim, "center_action": _tensor_from_mats(N.center_action, f)}
    if N.name:
        d["name"] = N.name
    if N.involution is not None:
        d["involution"] = _inv_to_json(N.involution, f)
    return d


def zmodule_from_json(A: Algebra, d: dict) -> ZModule:
    p = A.field.parse
    dim = int(d["dim"])
    mats = _mats_from_tensor(d["center_action"], p)
    if dim == 0:
        mats = ((),) * A.center_space.dim
    return ZModule(A, dim, mats, _inv_from_json(d.get("involution"), p), d.get("name", ""))


def load_bimodule(A: Algebra, path) -> Bimodule:
    with open(path) as fh:
        return bimodule_from_json(A, json.load(fh))
