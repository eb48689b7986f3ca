"""Exact linear algebra over Q and Q(i).

Vectors are tuples of scalars and matrices are tuples of row tuples.  The
elimination kernel works on sparse rows (``dict`` column -> value) because
every system assembled by this package is very sparse: connection axioms,
hom spaces and tensor relations all have a handful of nonzeros per row.

Bases are always returned in reduced row echelon form with ascending pivot
columns, so two subspaces are equal exactly when their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from heapq import heapify, heappop, heappush
from typing import Iterable, Optional, Sequence

Vector = tuple
Matrix = tuple


class DimensionError(ValueError):
    pass


# --------------------------------------------------------------------------
# dense helpers


def zeros(rows: int, cols: int, zero=0) -> Matrix:
    return tuple((zero,) * cols for _ in range(rows))


def identity(n: int, one=1, zero=0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    return rows, (len(m[0]) if rows else 0)


def matmul(a: Matrix, b: Matrix, zero=0) -> Matrix:
    """Product skipping zero entries of ``a``; ``b`` may be empty-width."""
    if not a:
        return ()
    inner = len(a[0])
    if inner != len(b):
        raise DimensionError(f"matmul: {len(a)}x{inner} times {len(b)}x?")
    if not b:
        return tuple(() for _ in a)
    cols = len(b[0])
    b_nz = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    out = []
    for row in a:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in b_nz[k]:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def matvec(a: Matrix, v: Sequence, zero=0) -> Vector:
    out = []
    nz = [(k, x) for k, x in enumerate(v) if x]
    for row in a:
        acc = zero
        for k, x in nz:
            y = row[k]
            if y:
                acc = acc + y * x
        out.append(acc)
    return tuple(out)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, m: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in m)


def lincomb(coeffs: Sequence, mats: Sequence[Matrix], rows: int, cols: int, zero=0) -> Matrix:
    acc = [[zero] * cols for _ in range(rows)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, row in enumerate(m):
            arow = acc[i]
            for j, x in enumerate(row):
                if x:
                    arow[j] = arow[j] + c * x
    return tuple(tuple(r) for r in acc)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def vlincomb(coeffs: Sequence, vecs: Sequence[Sequence], n: int, zero=0) -> Vector:
    acc = [zero] * n
    for c, v in zip(coeffs, vecs):
        if c:
            for k, x in enumerate(v):
                if x:
                    acc[k] = acc[k] + c * x
    return tuple(acc)


def is_zero(m) -> bool:
    """True for an all-zero vector or matrix."""
    for x in m:
        if isinstance(x, tuple):
            if not is_zero(x):
                return False
        elif x:
            return False
    return True


def kron(a: Matrix, b: Matrix, zero=0) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = [[zero] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                row = out[i * rb + k]
                bk = b[k]
                for l in range(cb):
                    y = bk[l]
                    if y:
                        row[j * cb + l] = x * y
    return tuple(tuple(r) for r in out)


def block_diag(blocks: Sequence[Matrix], zero=0) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return tuple(tuple(r) for r in out)


def flatten(m: Matrix) -> Vector:
    """Column-major flattening: entry ``k*rows + r`` is ``m[r][k]``.

    A linear map stored this way lists the images of the basis vectors one
    after the other, which matches how forms store their values.
    """
    rows, cols = shape(m)
    return tuple(m[r][k] for k in range(cols) for r in range(rows))


def unflatten(v: Sequence, rows: int, cols: int) -> Matrix:
    if len(v) != rows * cols:
        raise DimensionError(f"cannot reshape length {len(v)} to {rows}x{cols}")
    return tuple(tuple(v[k * rows + r] for k in range(cols)) for r in range(rows))


def conj_matrix(m: Matrix) -> Matrix:
    from .field import conj

    return tuple(tuple(conj(x) for x in row) for row in m)


def conj_vector(v: Sequence) -> Vector:
    from .field import conj

    return tuple(conj(x) for x in v)


# --------------------------------------------------------------------------
# sparse elimination


def _sparse(row: Sequence) -> dict:
    return {j: x for j, x in enumerate(row) if x}


class _Eliminator:
    """Incremental sparse row reduction.

    Pivot rows are kept normalised (pivot entry 1) and upper-echelon: a
    pivot row only has entries at columns >= its pivot.  Rows are reduced in
    increasing column order so that fill-in at later pivot columns is caught.
    The column ``barrier`` (if given) is never chosen as a pivot; a row whose
    leading entry sits there is inconsistent.
    """

    def __init__(self, barrier: Optional[int] = None):
        self.pivots: dict[int, dict] = {}
        self.barrier = barrier

    def reduce(self, row: dict) -> dict:
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapify(heap)
        while heap:
            c = heappop(heap)
            v = row.get(c)
            if not v:
                continue
            for k, pv in pivots[c].items():
                old = row.get(k)
                nv = -v * pv if old is None else old - v * pv
                if nv:
                    row[k] = nv
                    if old is None and k != c and k in pivots:
                        heappush(heap, k)
                else:
                    row.pop(k, None)
        return row

    def insert(self, row: dict) -> Optional[int]:
        """Add a row; return its new pivot column, or None if dependent.

        Returns ``-1`` when the reduced row lives only in the barrier column.
        """
        row = self.reduce(row)
        if not row:
            return None
        lead = min(row)
        if self.barrier is not None and lead >= self.barrier:
            return -1
        lead_val = row[lead]
        if type(lead_val) is int:
            lead_val = Fraction(lead_val)
        inv = 1 / lead_val
        if inv != 1:
            row = {k: x * inv for k, x in row.items()}
        self.pivots[lead] = row
        return lead

    def rref_rows(self) -> list[tuple[int, dict]]:
        """Fully reduced pivot rows sorted by pivot column."""
        order = sorted(self.pivots, reverse=True)
        done: dict[int, dict] = {}
        for p in order:
            row = dict(self.pivots[p])
            for q in sorted(k for k in row if k in done and k != p):
                v = row.get(q)
                if not v:
                    continue
                for k, x in done[q].items():
                    nv = row.get(k, 0) - v * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            done[p] = row
        return [(p, done[p]) for p in sorted(done)]


def _dense(row: dict, n: int, zero) -> Vector:
    out = [zero] * n
    for k, x in row.items():
        if k < n:
            out[k] = x
    return tuple(out)


def _zero_of(vectors, default=0):
    for v in vectors:
        for x in (v.values() if isinstance(v, dict) else v):
            return x * 0
    return default


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``K^ambient_dim`` with its reduced echelon basis."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = ()
    zero: object = dc_field(default=0, compare=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, zero=None) -> "Subspace":
        vectors = list(vectors)
        if zero is None:
            zero = _zero_of(vectors)
        elim = _Eliminator()
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient {ambient_dim}")
            elim.insert(_sparse(v))
        rows = elim.rref_rows()
        return cls(
            ambient_dim,
            tuple(_dense(r, ambient_dim, zero) for _, r in rows),
            tuple(p for p, _ in rows),
            zero,
        )

    @classmethod
    def zero_space(cls, n: int, zero=0) -> "Subspace":
        return cls(n, (), (), zero)

    @classmethod
    def full(cls, n: int, one=1, zero=0) -> "Subspace":
        return cls(n, identity(n, one, zero), tuple(range(n)), zero)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    @cached_property
    def _sparse_basis(self):
        return [_sparse(b) for b in self.basis]

    def residue(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        out = list(v)
        for p, b in zip(self.pivots, self._sparse_basis):
            c = out[p]
            if c:
                for k, x in b.items():
                    out[k] = out[k] - c * x
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        return is_zero(self.residue(v))

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c: Sequence) -> Vector:
        return vlincomb(c, self.basis, self.ambient_dim, self.zero)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.zero)

    def map_matrix(self, m: Matrix) -> Matrix:
        """Matrix of an endomorphism ``m`` of the ambient space restricted here.

        Requires stability; column k holds the coordinates of ``m @ basis[k]``.
        """
        cols = [self.coords(matvec(m, b, self.zero)) for b in self.basis]
        return transpose(cols) if cols else ()

    def is_stable(self, m: Matrix) -> bool:
        return all(self.contains(matvec(m, b, self.zero)) for b in self.basis)


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Matrix, tuple]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = list(rows)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    s = Subspace.span(rows, n)
    return s.basis, s.pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return Subspace.span(m, len(m[0])).dim


@dataclass(frozen=True)
class AffineSolution:
    particular: Vector
    kernel: Subspace

    def sample(self, coeffs: Sequence) -> Vector:
        return vadd(self.particular, self.kernel.from_coords(coeffs))


@dataclass(frozen=True)
class Infeasible:
    """The system has no solution.  ``witness_row`` is the first equation
    (in input order) that is inconsistent with the ones before it."""

    witness_row: int

    def __bool__(self):
        return False


def _solve_sparse(rows: Sequence[dict], rhs: Sequence, ncols: int, zero):
    elim = _Eliminator(barrier=ncols)
    for i, (row, b) in enumerate(zip(rows, rhs)):
        r = dict(row)
        if b:
            r[ncols] = b
        lead = elim.insert(r)
        if lead == -1:
            return Infeasible(i)
    reduced = elim.rref_rows()
    one = zero + 1
    particular = [zero] * ncols
    pivot_set = set()
    for p, r in reduced:
        pivot_set.add(p)
        if ncols in r:
            particular[p] = r[ncols]
    kern = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for p, r in reduced:
            x = r.get(f)
            if x:
                v[p] = -x
        kern.append(tuple(v))
    return AffineSolution(tuple(particular), Subspace.span(kern, ncols, zero))


def solve_affine(m: Matrix, rhs: Sequence, ncols: Optional[int] = None, zero=None):
    """Solve ``m x = rhs``.  Returns :class:`AffineSolution` or :class:`Infeasible`.

    The particular solution sets every free variable to zero.
    """
    if len(rhs) != len(m):
        raise DimensionError("rhs length must equal the number of rows")
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if zero is None:
        zero = _zero_of(list(m) + [rhs])
    return _solve_sparse([_sparse(r) for r in m], rhs, n, zero)


def solve_sparse(rows: Sequence[dict], rhs: Sequence, ncols: int, zero=0):
    """Like :func:`solve_affine` for rows already given as ``{col: value}``."""
    if len(rhs) != len(rows):
        raise DimensionError("rhs length must equal the number of rows")
    return _solve_sparse(rows, rhs, ncols, zero)


def kernel(m: Matrix, ncols: Optional[int] = None, zero=None) -> Subspace:
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if zero is None:
        zero = _zero_of(m)
    sol = _solve_sparse([_sparse(r) for r in m], [zero] * len(m), n, zero)
    return sol.kernel


def kernel_sparse(rows: Sequence[dict], ncols: int, zero=0) -> Subspace:
    return _solve_sparse(rows, [zero] * len(rows), ncols, zero).kernel


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """``a ∩ b``, via the kernel of ``[A^T | -B^T]``."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("ambient dimension mismatch")
    zero = a.zero
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero_space(a.ambient_dim, zero)
    n = a.ambient_dim
    rows = []
    for k in range(n):
        row = {}
        for i, v in enumerate(a.basis):
            if v[k]:
                row[i] = v[k]
        for j, w in enumerate(b.basis):
            if w[k]:
                row[a.dim + j] = -w[k]
        rows.append(row)
    ker = kernel_sparse(rows, a.dim + b.dim, zero)
    vecs = [vlincomb(c[: a.dim], a.basis, n, zero) for c in ker.basis]
    return Subspace.span(vecs, n, zero)


def quotient_basis(space: Subspace, sub: Subspace) -> list[Vector]:
    """Representatives in ``space`` whose classes form a basis of ``space/sub``."""
    if space.ambient_dim != sub.ambient_dim:
        raise DimensionError("ambient dimension mismatch")
    if not sub.is_subspace_of(space):
        raise ValueError("sub is not contained in space")
    residues = Subspace.span([sub.residue(v) for v in space.basis], space.ambient_dim, space.zero)
    return list(residues.basis)


@dataclass(frozen=True, eq=False)
class Quotient:
    """``space / sub`` with canonical representatives and a projection."""

    space: Subspace
    sub: Subspace
    reps: Subspace

    @classmethod
    def of(cls, space: Subspace, sub: Subspace) -> "Quotient":
        reps = quotient_basis(space, sub)
        return cls(space, sub, Subspace.span(reps, space.ambient_dim, space.zero))

    @property
    def dim(self) -> int:
        return self.reps.dim

    def project(self, v: Sequence) -> Vector:
        """Quotient coordinates of an element ``v`` of ``space``."""
        r = self.sub.residue(v)
        return self.reps.coords(r)

    def lift(self, c: Sequence) -> Vector:
        return self.reps.from_coords(c)

    def induced(self, m: Matrix) -> Matrix:
        """Matrix on the quotient of an endomorphism preserving ``sub``."""
        cols = [self.project(matvec(m, b, self.space.zero)) for b in self.reps.basis]
        return transpose(cols) if cols else ()


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises ``ValueError`` for singular input."""
    n = len(m)
    zero = _zero_of(m)
    one = zero + 1
    rows = [tuple(m[i]) + tuple(one if i == j else zero for j in range(n)) for i in range(n)]
    elim = _Eliminator()
    for r in rows:
        elim.insert(_sparse(r))
    red = elim.rref_rows()
    if len(red) < n or any(p != i for i, (p, _) in enumerate(red)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r.get(n + j, zero) for j in range(n)) for _, r in red)


def column_space(m: Matrix) -> Subspace:
    rows, cols = shape(m)
    return Subspace.span(transpose(m), rows, _zero_of(m))
