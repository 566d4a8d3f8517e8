"""Exact dense linear algebra and a subspace calculus over any base field.

Matrices hold FieldElement entries.  Row reduction over finite fields is
routed through packed numpy integer kernels (one plane per extension-degree
coefficient); Q and Q(i) use the generic object path.  Both paths compute
the same reduced row echelon form and are cross-checked in the tests.

Subspaces are stored by their canonical RREF basis, so equal subspaces
compare structurally equal.
"""

from __future__ import annotations

import numpy as np

from .scalars import FINITE, FieldElement, FieldSpec, _poly_inverse


class LinalgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vector helpers (vectors are plain lists/tuples of FieldElement)
# ---------------------------------------------------------------------------

def vec_zero(spec: FieldSpec, n: int):
    z = spec.zero()
    return [z] * n


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c: FieldElement, v):
    return [c * a for a in v]


def vec_is_zero(v) -> bool:
    return all(a.is_zero() for a in v)


def basis_vector(spec: FieldSpec, n: int, i: int):
    v = vec_zero(spec, n)
    v[i] = spec.one()
    return v


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense row-major matrix of FieldElements sharing one FieldSpec."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise LinalgError("entry count does not match matrix shape")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(spec: FieldSpec, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinalgError("ragged rows")
        flat = [x for r in rows for x in r]
        return Matrix(spec, len(rows), ncols, flat)

    @staticmethod
    def zero(spec: FieldSpec, rows: int, cols: int) -> "Matrix":
        return Matrix(spec, rows, cols, [spec.zero()] * (rows * cols))

    @staticmethod
    def identity(spec: FieldSpec, n: int) -> "Matrix":
        m = [spec.zero()] * (n * n)
        one = spec.one()
        for i in range(n):
            m[i * n + i] = one
        return Matrix(spec, n, n, m)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        out = [
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        ]
        return Matrix(self.spec, self.cols, self.rows, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.rows != self.rows or other.spec != self.spec:
            raise LinalgError("hstack shape or field mismatch")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return Matrix(self.spec, self.rows, self.cols + other.cols, out)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise LinalgError("dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = self.spec.zero()
            base = i * self.cols
            for j, x in enumerate(v):
                if not x.is_zero():
                    acc = acc + self.entries[base + j] * x
            out.append(acc)
        return out

    def mat_mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.spec != other.spec:
            raise LinalgError("matrix product shape or field mismatch")
        zero = self.spec.zero()
        out = [zero] * (self.rows * other.cols)
        for i in range(self.rows):
            for t in range(self.cols):
                a = self.entries[i * self.cols + t]
                if a.is_zero():
                    continue
                base = t * other.cols
                obase = i * other.cols
                for j in range(other.cols):
                    b = other.entries[base + j]
                    if not b.is_zero():
                        out[obase + j] = out[obase + j] + a * b
        return Matrix(self.spec, self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols} over {self.spec.describe()}: {body})"


# ---------------------------------------------------------------------------
# packed finite-field elimination kernels
# ---------------------------------------------------------------------------

def _to_planes(m: Matrix) -> np.ndarray:
    """(rows, cols, k) int64 coefficient planes of a finite-field matrix."""
    s = m.spec
    k = s.k
    arr = np.zeros((m.rows, m.cols, k), dtype=np.int64)
    if k == 1:
        for i in range(m.rows):
            base = i * m.cols
            arr[i, :, 0] = [m.entries[base + j].val for j in range(m.cols)]
    else:
        for i in range(m.rows):
            base = i * m.cols
            for j in range(m.cols):
                arr[i, j, :] = m.entries[base + j].val
    return arr


def _from_planes(spec: FieldSpec, arr: np.ndarray) -> Matrix:
    rows, cols, k = arr.shape
    if k == 1:
        ents = [FieldElement(spec, int(v)) for v in arr[:, :, 0].ravel()]
    else:
        ents = [
            FieldElement(spec, tuple(int(c) for c in arr[i, j]))
            for i in range(rows)
            for j in range(cols)
        ]
    return Matrix(spec, rows, cols, ents)


def _companion_powers(spec: FieldSpec) -> np.ndarray:
    """Stack of X^0..X^(k-1) where X is the companion matrix of the modulus."""
    p, k = spec.p, spec.k
    X = np.zeros((k, k), dtype=np.int64)
    for i in range(k - 1):
        X[i + 1, i] = 1
    X[:, k - 1] = [(-c) % p for c in spec.modulus[:k]]
    powers = np.zeros((k, k, k), dtype=np.int64)
    acc = np.eye(k, dtype=np.int64)
    for t in range(k):
        powers[t] = acc
        acc = (X @ acc) % p
    return powers


def _rref_planes(arr: np.ndarray, spec: FieldSpec):
    """In-place Gauss-Jordan on coefficient planes; returns pivot columns."""
    p, k = spec.p, spec.k
    m, n, _ = arr.shape
    xpow = _companion_powers(spec) if k > 1 else None
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(arr[r:, c, :].any(axis=1))[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            arr[[r, i]] = arr[[i, r]]
        if k == 1:
            inv = pow(int(arr[r, c, 0]), p - 2, p)
            arr[r] = (arr[r] * inv) % p
            colv = arr[:, c, 0].copy()
            colv[r] = 0
            arr -= colv[:, None, None] * arr[r][None, :, :]
            arr %= p
        else:
            inv = _poly_inverse([int(v) for v in arr[r, c]], list(spec.modulus), p)
            inv += [0] * (k - len(inv))
            mul = np.einsum("t,tij->ij", np.array(inv, dtype=np.int64), xpow) % p
            arr[r] = np.einsum("ij,nj->ni", mul, arr[r]) % p
            factors = arr[:, c, :].copy()
            factors[r] = 0
            mf = np.einsum("mt,tij->mij", factors, xpow) % p
            arr -= np.einsum("mij,nj->mni", mf, arr[r])
            arr %= p
        pivots.append(c)
        r += 1
    return pivots


def _rref_generic(rows, spec: FieldSpec):
    """Object-path Gauss-Jordan; rows is a list of lists, modified in place."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        sel = None
        for i in range(r, m):
            if not rows[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(m):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Reduced row echelon form; returns (Matrix, rank, pivot columns)."""
    if m.rows == 0 or m.cols == 0:
        return m, 0, ()
    if m.spec.kind == FINITE:
        arr = _to_planes(m)
        pivots = _rref_planes(arr, m.spec)
        return _from_planes(m.spec, arr), len(pivots), tuple(pivots)
    rows = m.row_list()
    pivots = _rref_generic(rows, m.spec)
    return Matrix.from_rows(m.spec, rows), len(pivots), tuple(pivots)


def kernel(m: Matrix) -> "Subspace":
    """Right null space of m as a subspace of F^cols."""
    red, rank, pivots = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in set(pivots)]
    spec = m.spec
    vecs = []
    for f in free:
        v = vec_zero(spec, n)
        v[f] = spec.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red.entry(r, f)
        vecs.append(v)
    return Subspace.from_vectors(spec, n, vecs)


def solve(m: Matrix, v) -> list | None:
    """Some x with m*x = v, or None; free variables are set to 0."""
    if len(v) != m.rows:
        raise LinalgError("dimension mismatch")
    aug = Matrix(m.spec, m.rows, m.cols + 1, _interleave(m, v))
    red, rank, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = vec_zero(m.spec, m.cols)
    for r, pc in enumerate(pivots):
        x[pc] = red.entry(r, m.cols)
    return x


def _interleave(m: Matrix, v):
    out = []
    for i in range(m.rows):
        out.extend(m.row(i))
        out.append(v[i])
    return out


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of F^ambient, stored by its canonical RREF basis."""

    __slots__ = ("spec", "ambient", "basis", "pivots")

    def __init__(self, spec: FieldSpec, ambient: int, basis, pivots):
        self.spec = spec
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @staticmethod
    def from_vectors(spec: FieldSpec, ambient: int, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors if not vec_is_zero(v)]
        if not vectors:
            return Subspace(spec, ambient, (), ())
        if any(len(v) != ambient for v in vectors):
            raise LinalgError("vector length does not match ambient dimension")
        m = Matrix.from_rows(spec, vectors)
        red, rank, pivots = rref(m)
        return Subspace(spec, ambient, [red.row(i) for i in range(rank)], pivots)

    @staticmethod
    def zero_space(spec: FieldSpec, ambient: int) -> "Subspace":
        return Subspace(spec, ambient, (), ())

    @staticmethod
    def full_space(spec: FieldSpec, ambient: int) -> "Subspace":
        eye = Matrix.identity(spec, ambient)
        return Subspace(spec, ambient, eye.row_list(), range(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.spec == other.spec
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient})"

    def reduce_vector(self, v):
        """Residual of v after eliminating this subspace's pivot coordinates."""
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise LinalgError("ambient dimension mismatch")
        return vec_is_zero(self.reduce_vector(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(list(r)) for r in other.basis)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient != other.ambient or self.spec != other.spec:
            raise LinalgError("ambient dimension mismatch")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(
            self.spec, self.ambient, list(self.basis) + list(other.basis)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref of [A|A; B|0], intersection read off zero-left rows."""
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero_space(self.spec, self.ambient)
        n = self.ambient
        zero = self.spec.zero()
        block = []
        for r in self.basis:
            block.append(list(r) + list(r))
        for r in other.basis:
            block.append(list(r) + [zero] * n)
        red, rank, _ = rref(Matrix.from_rows(self.spec, block))
        vecs = []
        for i in range(rank):
            row = red.row(i)
            if vec_is_zero(row[:n]):
                vecs.append(row[n:])
        return Subspace.from_vectors(self.spec, n, vecs)

    def complement_in(self, big: "Subspace") -> "Subspace":
        """Deterministic complement c with self + c = big, self ∩ c = 0.

        Greedily extends self by big's canonical basis rows in index order.
        """
        self._check_ambient(big)
        if not big.contains_subspace(self):
            raise LinalgError("complement: small is not contained in big")
        added = _independent_extension(self, big.basis)
        return Subspace.from_vectors(self.spec, self.ambient, added)

    def quotient_reps(self, small: "Subspace"):
        """dim(self)-dim(small) basis rows of self spanning a complement of small."""
        self._check_ambient(small)
        if not self.contains_subspace(small):
            raise LinalgError("quotient: small is not contained in big")
        return _independent_extension(small, self.basis)


def _independent_extension(base: Subspace, candidates):
    """Rows from `candidates` that extend `base` to a larger independent set."""
    work = [list(r) for r in base.basis]
    piv = list(base.pivots)
    added = []
    for cand in candidates:
        v = list(cand)
        for row, pc in zip(work, piv):
            c = v[pc]
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, row)]
        lead = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if lead is None:
            continue
        inv = v[lead].inverse()
        v = [inv * x for x in v]
        # keep `work` in echelon-ish shape: eliminate the new pivot above
        for i in range(len(work)):
            c = work[i][lead]
            if not c.is_zero():
                work[i] = [a - c * b for a, b in zip(work[i], v)]
        ins = 0
        while ins < len(piv) and piv[ins] < lead:
            ins += 1
        work.insert(ins, v)
        piv.insert(ins, lead)
        added.append(list(cand))
    return added
