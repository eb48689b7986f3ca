"""Inner products on involutive bimodules, pseudo-metrics on Der(A), Levi-Civita.

Bilinear data is stored as a table ``values[p][q]`` of A-vectors on basis
pairs.  Inner products are A-bilinear in the sense of bimodule maps out of
``M (x)_A M``; hermitian forms are antilinear in the first slot over the
base field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import exactlin as el
from .algebra import Algebra, PreconditionError, UnsupportedOperation
from .bimodule import (
    Bimodule,
    ZModule,
    _hom,
    derivation_zmodule,
    hom_Z_to_A,
    left_dual,
    tensor_over_A,
)
from .connection import (
    Connection,
    InvariantError,
    curvature,
    is_compatible,
    is_real_connection,
    torsion_on_der,
    validate_connection,
)
from .exactlin import Matrix, Quotient, Subspace, Vector
from .field import conj
from .forms import calculus, omega1_underline
from .report import Report


def _bilinear(A: Algebra, values, m: Sequence, n: Sequence) -> Vector:
    out = A.zero_vector()
    for p, x in enumerate(m):
        if not x:
            continue
        row = values[p]
        for q, y in enumerate(n):
            if y:
                out = el.vadd(out, el.vscale(x * y, row[q]))
    return out


def _fmt_table(A: Algebra, values) -> list:
    f = A.field.format
    return [[[f(x) for x in v] for v in row] for row in values]


def _parse_table(A: Algebra, rows) -> tuple:
    p = A.field.parse
    return tuple(tuple(tuple(p(x) for x in v) for v in row) for row in rows)


# ----------------------------------------------------------------------------
# inner products and hermitian forms


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """``g(m_p, m_q) = values[p][q]``, extended bilinearly over the base field."""

    algebra: Algebra
    module: Bimodule
    values: tuple

    def value(self, m: Sequence, n: Sequence) -> Vector:
        return _bilinear(self.algebra, self.values, m, n)

    def hermitian(self) -> "HermitianForm":
        """``h(m, n) = g(m*, n)``."""
        A, M = self.algebra, self.module
        vals = tuple(
            tuple(self.value(M.star(M.basis_vector(p)), M.basis_vector(q)) for q in range(M.dim))
            for p in range(M.dim)
        )
        return HermitianForm(A, M, vals)

    def to_json(self) -> dict:
        return {"kind": "inner_product", "values": _fmt_table(self.algebra, self.values)}


@dataclass(frozen=True, eq=False)
class HermitianForm:
    """``h(m_p, m_q) = values[p][q]``; antilinear in ``m`` when the field is complex."""

    algebra: Algebra
    module: Bimodule
    values: tuple

    def value(self, m: Sequence, n: Sequence) -> Vector:
        c = self.algebra.involution.conjugate if self.algebra.involution else False
        mm = tuple(conj(x) for x in m) if c else m
        return _bilinear(self.algebra, self.values, mm, n)

    def inner_product(self) -> InnerProduct:
        """``g(m, n) = h(m*, n)``."""
        A, M = self.algebra, self.module
        vals = tuple(
            tuple(self.value(M.star(M.basis_vector(p)), M.basis_vector(q)) for q in range(M.dim))
            for p in range(M.dim)
        )
        return InnerProduct(A, M, vals)


def hermitian_from_inner(g: InnerProduct) -> HermitianForm:
    return g.hermitian()


def inner_from_hermitian(h: HermitianForm) -> InnerProduct:
    return h.inner_product()


def gsharp(g: InnerProduct) -> tuple[Bimodule, Matrix]:
    """``g#: M -> M'`` with ``g#(m)(n) = g(m, n)``, as a matrix into left-dual coordinates."""
    A, M = g.algebra, g.module
    Md = left_dual(A, M)
    H = Md.realization
    cols = []
    for p in range(M.dim):
        f = el.transpose([g.values[p][q] for q in range(M.dim)]) if M.dim else ()
        if not H.contains(f):
            raise PreconditionError("g(m, .) is not right A-linear")
        cols.append(H.coords(f))
    return Md, (el.transpose(cols) if cols else ())


def validate_inner_product(A: Algebra, M: Bimodule, g: InnerProduct) -> Report:
    if M.involution is None or A.involution is None:
        raise UnsupportedOperation("inner products need involutions on A and M")
    rep = Report(f"inner product on {M.name}")
    basis = [M.basis_vector(p) for p in range(M.dim)]
    alg = [A.basis_vector(i) for i in range(A.dim)]
    z = A.zero
    bad_l, bad_r, bad_mid, bad_real = [], [], [], []
    for p, m in enumerate(basis):
        for q, n in enumerate(basis):
            gv = g.values[p][q]
            for i, a in enumerate(alg):
                if g.value(el.matvec(M.left[i], m, z), n) != A.multiply(a, gv):
                    bad_l.append((i, p, q))
                if g.value(m, el.matvec(M.right[i], n, z)) != A.multiply(gv, a):
                    bad_r.append((p, q, i))
                if g.value(el.matvec(M.right[i], m, z), n) != g.value(m, el.matvec(M.left[i], n, z)):
                    bad_mid.append((p, i, q))
            if A.star(gv) != g.value(M.star(n), M.star(m)):
                bad_real.append((p, q))
    rep.check("g(am, n) = a g(m, n)", not bad_l, str(bad_l[:3]) if bad_l else "")
    rep.check("g(m, nb) = g(m, n) b", not bad_r, str(bad_r[:3]) if bad_r else "")
    rep.check("g(ma, n) = g(m, an)", not bad_mid, str(bad_mid[:3]) if bad_mid else "")
    rep.check("reality (g(m,n))* = g(n*, m*)", not bad_real, f"violated at basis pairs {bad_real[:3]}" if bad_real else "")

    h = g.hermitian()
    bad_h = []
    for p, m in enumerate(basis):
        for q, n in enumerate(basis):
            hv = h.values[p][q]
            for i, a in enumerate(alg):
                for j, b in enumerate(alg):
                    lhs = h.value(el.matvec(M.right[i], m, z), el.matvec(M.right[j], n, z))
                    if lhs != A.multiply(A.multiply(A.star(a), hv), b):
                        bad_h.append(("h(ma,nb)", p, q, i, j))
                if h.value(m, el.matvec(M.left[i], n, z)) != h.value(el.matvec(M.left_mat(A.star(a)), m, z), n):
                    bad_h.append(("h(m,cn)", p, q, i))
            if A.star(hv) != h.values[q][p]:
                bad_h.append(("h*", p, q))
    rep.check("right-hermitian identities of h", not bad_h, str(bad_h[:3]) if bad_h else "")
    back = h.inner_product()
    rep.check("g -> h -> g round trip", back.values == g.values)
    try:
        Md, gs = gsharp(g)
        nondeg = el.rank(el.transpose(gs)) == M.dim if M.dim else True
        rep.check("g# is a bimodule map into M'", _gsharp_is_hom(A, M, Md, gs))
        rep.results["nondegenerate"] = nondeg
    except PreconditionError as exc:
        rep.check("g# is a bimodule map into M'", False, str(exc))
        rep.results["nondegenerate"] = False
    rep.results["positivity"] = "not evaluated"
    return rep


def _gsharp_is_hom(A, M, Md, gs) -> bool:
    if not M.dim or not Md.dim:
        return True
    return all(
        el.matmul(gs, Sm, A.zero) == el.matmul(Sd, gs, A.zero)
        for Sm, Sd in zip(M.left + M.right, Md.left + Md.right)
    )


def is_nondegenerate(g: InnerProduct) -> bool:
    _, gs = gsharp(g)
    return el.rank(el.transpose(gs)) == g.module.dim if g.module.dim else True


def compose_hermitian(hE: HermitianForm, hM: HermitianForm) -> HermitianForm:
    """``h(phi (x) m, psi (x) n) = h_M(m, h_E(phi, psi) n)`` on ``E (x)_A M``."""
    A = hE.algebra
    E, M = hE.module, hM.module
    T = tensor_over_A(A, E, M)
    Q: Quotient = T.realization.quotient
    N = E.dim * M.dim
    z = A.zero

    # on the pre-tensor basis (p, q) -> p*dimM + q
    def pre(p, q, p2, q2):
        inner = hE.values[p][p2]
        return hM.value(M.basis_vector(q), el.matvec(M.left_mat(inner), M.basis_vector(q2), z))

    table = [[pre(i // M.dim, i % M.dim, j // M.dim, j % M.dim) for j in range(N)] for i in range(N)]
    big = HermitianForm(A, _pre_module(A, N), tuple(tuple(r) for r in table))
    for rel in Q.sub.basis:
        for k in range(N):
            ek = tuple(A.one if i == k else z for i in range(N))
            if not el.is_zero(big.value(rel, ek)) or not el.is_zero(big.value(ek, rel)):
                raise InvariantError("composed hermitian form does not descend to the tensor product")
    reps = Q.reps.basis
    vals = tuple(tuple(big.value(r, s) for s in reps) for r in reps)
    return HermitianForm(A, T, vals)


def _pre_module(A, n):
    # only the dimension is used when evaluating a hermitian form on raw vectors
    return Bimodule(A, n, (), (), None, "pre-tensor")


def dual_inner_product(A: Algebra, gram: Matrix, M: Optional[Bimodule] = None) -> InnerProduct:
    """``g(w, v) = sum_ab w(X_a) G^{ab} v(X_b)`` on one-forms, for a scalar Gram matrix ``G^{ab}``."""
    O = M or omega1_underline(A)
    real = O.realization
    calc = real.calculus
    d = A.der.dim
    forms = [real.form(tuple(A.one if i == k else A.zero for i in range(O.dim))) for k in range(O.dim)]
    evals = [[calc.value(w, (a,)) for a in range(d)] for w in forms]
    vals = []
    for p in range(O.dim):
        row = []
        for q in range(O.dim):
            acc = A.zero_vector()
            for a in range(d):
                for b in range(d):
                    c = gram[a][b]
                    if c:
                        acc = el.vadd(acc, el.vscale(c, A.multiply(evals[p][a], evals[q][b])))
            row.append(acc)
        vals.append(tuple(row))
    return InnerProduct(A, O, tuple(vals))


# ----------------------------------------------------------------------------
# pseudo-metrics on Der(A)


@dataclass(frozen=True, eq=False)
class PseudoMetric:
    """``g_*(X_a, X_b) = values[a][b]``."""

    algebra: Algebra
    values: tuple

    def value(self, u: Sequence, v: Sequence) -> Vector:
        return _bilinear(self.algebra, self.values, u, v)

    def to_json(self) -> dict:
        return {"kind": "pseudo_metric", "values": _fmt_table(self.algebra, self.values)}

    @cached_property
    def scalar_gram(self) -> Optional[Matrix]:
        """Gram matrix when every value is a multiple of the unit, else None."""
        A = self.algebra
        out = []
        for row in self.values:
            r = []
            for v in row:
                c = _unit_multiple(A, v)
                if c is None:
                    return None
                r.append(c)
            out.append(tuple(r))
        return tuple(out)


def _unit_multiple(A: Algebra, v):
    k = next((i for i, u in enumerate(A.unit) if u), None)
    c = v[k] / A.unit[k]
    return c if el.vscale(c, A.unit) == tuple(v) else None


def pseudo_metric_from_json(A: Algebra, d: dict) -> PseudoMetric:
    if d.get("kind") != "pseudo_metric":
        raise ValueError("expected a pseudo_metric document")
    vals = _parse_table(A, d["values"])
    if len(vals) != A.der.dim or any(len(r) != A.der.dim for r in vals):
        raise ValueError(f"pseudo-metric must be {A.der.dim} x {A.der.dim}")
    return PseudoMetric(A, vals)


def gsharp_star(g: PseudoMetric) -> Matrix:
    """``g_*#: Der -> one-forms`` in the echelon coordinates of the Z-linear one-forms."""
    A = g.algebra
    d = A.der.dim
    S = calculus(A).underline(1)
    cols = []
    for a in range(d):
        vec = tuple(x for b in range(d) for x in g.values[a][b])
        if not S.contains(vec):
            raise PreconditionError("g_*(X, .) is not Z-linear")
        cols.append(S.coords(vec))
    return el.transpose(cols) if cols else tuple(() for _ in range(S.dim))


def validate_pseudo_metric(A: Algebra, g: PseudoMetric) -> Report:
    rep = Report("pseudo-metric")
    D = A.der
    d = D.dim
    rep.check("symmetric", all(g.values[a][b] == g.values[b][a] for a in range(d) for b in range(d)))
    ZA = D.center_action
    bad = []
    for j, zv in enumerate(A.center_space.basis):
        for a in range(d):
            zX = tuple(ZA[j][c][a] for c in range(d))
            for b in range(d):
                if g.value(zX, _e(A, b, d)) != A.multiply(zv, g.values[a][b]):
                    bad.append((j, a, b))
    rep.check("Z-bilinear", not bad, str(bad[:3]) if bad else "")
    if A.involution is not None and d:
        J = D.star_matrix
        ok = all(
            A.star(g.values[a][b]) == g.value(tuple(J[c][a] for c in range(d)), tuple(J[c][b] for c in range(d)))
            for a in range(d)
            for b in range(d)
        )
        rep.check("real: (g(X,Y))* = g(X*, Y*)", ok)
    try:
        gs = gsharp_star(g)
        nondeg = el.rank(el.transpose(gs)) == d if d else True
    except PreconditionError as exc:
        rep.check("g_*# lands in Z-linear one-forms", False, str(exc))
        nondeg = False
    rep.check("nondegenerate (g_*# injective)", nondeg)
    return rep


def _e(A, k, d):
    return tuple(A.one if i == k else A.zero for i in range(d))


# ----------------------------------------------------------------------------
# Levi-Civita


@dataclass(frozen=True)
class NoSolution:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True, eq=False)
class LeviCivita:
    connection: Connection
    report: Report


def koszul_covector(g: PseudoMetric, a: int, b: int) -> tuple:
    """``Z -> g_*(nabla_{X_a} X_b, Z)`` from the Koszul formula, as values on the Der basis."""
    A = g.algebra
    D = A.der
    d = D.dim
    sc = D.structure_constants
    half = A.one / 2
    out = []
    for c in range(d):
        Xa, Xb, Xc = D.basis[a], D.basis[b], D.basis[c]
        t = el.matvec(Xa, g.values[b][c], A.zero)
        t = el.vadd(t, el.matvec(Xb, g.values[a][c], A.zero))
        t = el.vsub(t, el.matvec(Xc, g.values[a][b], A.zero))
        t = el.vadd(t, g.value(sc[a][b], _e(A, c, d)))
        t = el.vsub(t, g.value(sc[b][c], _e(A, a, d)))
        t = el.vadd(t, g.value(sc[c][a], _e(A, b, d)))
        out.append(el.vscale(half, t))
    return tuple(out)


def levi_civita(A: Algebra, g: PseudoMetric):
    """Solve the Koszul system; :class:`LeviCivita` or :class:`NoSolution`."""
    pre = validate_pseudo_metric(A, g)
    if not next(c for c in pre.checks if c.name.startswith("nondegenerate")).passed:
        raise PreconditionError("pseudo-metric is degenerate")
    D = A.der
    d = D.dim
    Der: ZModule = derivation_zmodule(A)
    rep = Report("Levi-Civita")
    rep.extend(pre, "metric: ")
    if d == 0:
        nabla = Connection(A, Der, (), "levi-civita")
        rep.check("unique", True, "Der(A) = 0")
        return LeviCivita(nabla, rep)
    S = calculus(A).underline(1)
    gs = gsharp_star(g)
    rep.check("unique (g_*# injective)", el.rank(el.transpose(gs)) == d)
    cols = [[None] * d for _ in range(d)]
    for a in range(d):
        for b in range(d):
            cov = koszul_covector(g, a, b)
            vec = tuple(x for v in cov for x in v)
            if not S.contains(vec):
                return NoSolution(f"Koszul covector for ({a},{b}) is not Z-linear")
            sol = el.solve_affine(gs, S.coords(vec), d, A.zero)
            if not sol:
                return NoSolution(f"Koszul covector for ({a},{b}) is not in the image of g_*#")
            cols[a][b] = sol.particular
    # nabla_a has column b = coordinates of nabla_{X_a} X_b
    coeffs = tuple(el.transpose(cols[a]) for a in range(d))
    nabla = Connection(A, Der, coeffs, "levi-civita")
    axioms = validate_connection(nabla)
    rep.extend(axioms, "axioms: ")
    if not axioms.passed:
        return NoSolution("Koszul solution violates the connection axioms")
    rep.check("torsion-free", torsion_on_der(nabla).is_zero)
    rep.check("metric compatible", is_compatible(nabla, g))
    if A.involution is not None:
        rep.check("real", is_real_connection(nabla))
    again = all(
        tuple(g.value(nabla.apply(a, _e(A, b, d)), _e(A, c, d)) for c in range(d)) == koszul_covector(g, a, b)
        for a in range(d)
        for b in range(d)
    )
    rep.check("Koszul round trip", again)
    return LeviCivita(nabla, rep)


def half_bracket_report(nabla: Connection) -> Report:
    """Compare with ``nabla_X Y = 1/2 [X, Y]`` and ``R_{X,Y} Z = -1/4 [[X,Y],Z]``."""
    A = nabla.algebra
    D = A.der
    d = D.dim
    sc = D.structure_constants
    rep = Report("half-bracket comparison")
    half = A.one / 2
    rep.check(
        "nabla_X Y = 1/2 [X,Y] on basis",
        all(nabla.apply(a, _e(A, b, d)) == el.vscale(half, sc[a][b]) for a in range(d) for b in range(d)),
    )
    R = curvature(nabla)
    quarter = A.one / 4
    ok = True
    for a in range(d):
        for b in range(d):
            Rab = R.pair(a, b)
            for c in range(d):
                expect = el.vscale(-quarter, D.bracket_coords(sc[a][b], _e(A, c, d)))
                if el.matvec(Rab, _e(A, c, d), A.zero) != expect:
                    ok = False
    rep.check("R_{X,Y} Z = -1/4 [[X,Y],Z] on all basis triples", ok)
    return rep


# ----------------------------------------------------------------------------
# the flip on bilinear forms


@dataclass(frozen=True, eq=False)
class SigmaFlip:
    """Transposition ``b(X, Y) -> b(Y, X)`` on Z-bilinear forms ``Der x Der -> A``."""

    algebra: Algebra
    forms: object  # HomSpace of maps (Der (x) Der) -> A, pre-tensor coordinates
    matrix: Matrix

    @property
    def dim(self) -> int:
        return self.forms.dim

    def fixed_space(self) -> Subspace:
        A = self.algebra
        I = el.identity(self.dim, A.one, A.zero)
        ker = el.kernel(el.sub(self.matrix, I), self.dim, A.zero)
        H = self.forms
        return Subspace.span([H.space.from_coords(c) for c in ker.basis], H.space.ambient_dim, A.zero)


def _flip(d, A):
    n = d * d
    return tuple(
        tuple(A.one if (i // d == j % d and i % d == j // d) else A.zero for j in range(n)) for i in range(n)
    )


def bilinear_forms(A: Algebra):
    """``(Der (x)_Z Der)^{*_A}`` as Z-bilinear maps on the pre-tensor basis ``a*d + b``."""
    D = A.der
    d = D.dim
    I = el.identity(d, A.one, A.zero)
    pairs = []
    for ZAj, Lz in zip(D.center_action, A.center_mats):
        pairs.append((el.kron(ZAj, I, A.zero), Lz))
        pairs.append((el.kron(I, ZAj, A.zero), Lz))
    return _hom(pairs, d * d, A.dim, A.zero)


def sigma(A: Algebra) -> SigmaFlip:
    d = A.der.dim
    H = bilinear_forms(A)
    P = _flip(d, A)
    cols = []
    for f in H.maps:
        cols.append(H.coords(el.matmul(f, P, A.zero)))
    return SigmaFlip(A, H, el.transpose(cols) if cols else ())


def symmetric_forms(A: Algebra) -> Subspace:
    """``(S^2_Z Der)^{*_A}`` through the symmetric quotient of ``Der (x)_Z Der``."""
    D = A.der
    d = D.dim
    n = d * d
    rels = []
    for a in range(d):
        for b in range(d):
            v = [A.zero] * n
            v[a * d + b] = v[a * d + b] + 1
            v[b * d + a] = v[b * d + a] - 1
            if not el.is_zero(v):
                rels.append(tuple(v))
    I = el.identity(d, A.one, A.zero)
    for j in range(len(D.center_action)):
        ZAj = D.center_action[j]
        for a in range(d):
            for b in range(d):
                left = el.matvec(el.kron(ZAj, I, A.zero), _e(A, a * d + b, n), A.zero)
                right = el.matvec(el.kron(I, ZAj, A.zero), _e(A, a * d + b, n), A.zero)
                v = el.vsub(left, right)
                if not el.is_zero(v):
                    rels.append(v)
    Q = Quotient.of(Subspace.full(n, A.one, A.zero), Subspace.span(rels, n, A.zero))
    mats = tuple(Q.induced(el.kron(ZAj, I, A.zero)) for ZAj in D.center_action)
    if not Q.dim:
        return Subspace.zero_space(A.dim * n, A.zero)
    S2 = ZModule(A, Q.dim, mats, None, "S2 Der")
    H = hom_Z_to_A(A, S2)
    proj = el.transpose([Q.project(_e(A, k, n)) for k in range(n)])
    return Subspace.span([el.flatten(el.matmul(f, proj, A.zero)) for f in H.maps], A.dim * n, A.zero)


def _pseudo_metric_vector(g: PseudoMetric) -> Vector:
    A = g.algebra
    d = A.der.dim
    f = el.transpose([g.values[k // d][k % d] for k in range(d * d)]) if d else ()
    return el.flatten(f)


def sigma_checks(A: Algebra, g: Optional[PseudoMetric] = None, expect_equality: bool = True) -> Report:
    """Checks on the flip.  With ``expect_equality=False`` the comparison of the
    tensor square of one-forms with all bilinear forms is only recorded in
    ``results`` (it fails for some non-semisimple algebras)."""
    rep = Report("sigma flip")
    s = sigma(A)
    I = el.identity(s.dim, A.one, A.zero)
    rep.check("sigma^2 = id", el.matmul(s.matrix, s.matrix, A.zero) == I if s.dim else True)
    rep.check("fixed space of sigma = (S^2_Z Der)^*A", s.fixed_space() == symmetric_forms(A))

    O = omega1_underline(A)
    T = tensor_over_A(A, O, O)
    Q = T.realization.quotient
    real = O.realization
    calc = real.calculus
    d = A.der.dim
    forms = [real.form(_e(A, k, O.dim)) for k in range(O.dim)]
    evals = [[calc.value(w, (a,)) for a in range(d)] for w in forms]

    def as_bilinear(v):
        # v in pre-tensor coordinates of O (x) O
        out = [A.zero_vector() for _ in range(d * d)]
        for idx, c in enumerate(v):
            if not c:
                continue
            p, q = divmod(idx, O.dim)
            for a in range(d):
                for b in range(d):
                    out[a * d + b] = el.vadd(out[a * d + b], el.vscale(c, A.multiply(evals[p][a], evals[q][b])))
        return el.flatten(el.transpose(out)) if d else ()

    H = s.forms
    well_defined = all(el.is_zero(as_bilinear(r)) for r in Q.sub.basis)
    rep.check("w (x) v -> w(X) v(Y) descends to the tensor product over A", well_defined)
    images = [as_bilinear(r) for r in Q.reps.basis]
    inside = all(H.space.contains(v) for v in images)
    rep.check("image consists of Z-bilinear forms", inside)
    img = Subspace.span(images, H.space.ambient_dim, A.zero)
    rep.results["tensor_dim"] = T.dim
    rep.results["bilinear_dim"] = H.dim
    rep.results["image_dim"] = img.dim
    rep.check("image is sigma-stable", all(img.contains(el.flatten(el.matmul(f, _flip(d, A), A.zero))) for f in (el.unflatten(v, A.dim, d * d) for v in img.basis)))
    equal = img.dim == T.dim == H.dim
    rep.results["tensor_equality"] = equal
    if expect_equality:
        rep.check("tensor square of one-forms = bilinear forms", equal, f"{T.dim} = {img.dim} = {H.dim}")
    if g is not None:
        v = _pseudo_metric_vector(g)
        rep.check("metric is sigma-invariant", H.contains(el.unflatten(v, A.dim, d * d)) and el.matvec(s.matrix, H.space.coords(v), A.zero) == H.space.coords(v))
    return rep


# ----------------------------------------------------------------------------
# fixtures


def killing_metric(A: Algebra) -> PseudoMetric:
    from .fixtures import killing_values

    return PseudoMetric(A, killing_values(A))


def derivation_coords(A: Algebra, x: Sequence) -> Vector:
    """Der coordinates of ``ad(x)``."""
    return A.der.coords(A.ad(x))
