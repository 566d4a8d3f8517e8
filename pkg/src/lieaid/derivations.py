"""Derivation algebras: Der(g), Inn(g), a complement U, the spaces D_z of
derivations acting innerly on a line, and the candidate-refinement loop.

Conventions, fixed package-wide:
  * a derivation matrix D has entries d[j][k] with delta(b_j) = sum_k d[j][k] b_k
    (row j holds the image coordinates of b_j);
  * derivations flatten row-major to vectors of length n^2, so the block
    for b_j's image is contiguous;
  * as an operator on coordinate columns, delta acts by D^T.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import liealg, linalg
from .liealg import StructureTable
from .linalg import Matrix, Subspace
from .scalars import FINITE, RATIONAL, FieldElement, FieldSpec


@dataclass
class Derivation:
    """An n x n derivation matrix with provenance tag."""

    matrix: Matrix
    tag: str = "candidate"  # inner | candidate | certified_aid
    inner_witness: list | None = None


def flatten(m: Matrix):
    return list(m.entries)


def unflatten(spec: FieldSpec, n: int, vec) -> Matrix:
    return Matrix(spec, n, n, list(vec))


def apply_derivation(dmat: Matrix, x):
    """delta(x) for a coordinate vector x: row-vector action x . D."""
    n = dmat.rows
    out = linalg.vec_zero(dmat.spec, n)
    for j, c in enumerate(x):
        if c.is_zero():
            continue
        row = dmat.row(j)
        for k in range(n):
            if not row[k].is_zero():
                out[k] = out[k] + c * row[k]
    return out


def ad_derivation(t: StructureTable, a) -> Matrix:
    """ad(a) as a derivation matrix: row j = coordinates of [a, b_j]."""
    return liealg.ad_matrix(t, a).transpose()


def derivation_commutator(a: Matrix, b: Matrix) -> Matrix:
    """Commutator of derivations in the row-convention: [da, db] = b.a - a.b.

    Orientation is fixed by requiring [ad x, ad y] = ad([x, y]).
    """
    prod1 = b.mat_mul(a)
    prod2 = a.mat_mul(b)
    return Matrix(
        a.spec, a.rows, a.cols, [u - v for u, v in zip(prod1.entries, prod2.entries)]
    )


def is_derivation(t: StructureTable, dmat: Matrix) -> bool:
    """Leibniz identity on all basis pairs."""
    n = t.dim
    basis = [linalg.basis_vector(t.spec, n, i) for i in range(n)]
    images = [dmat.row(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = apply_derivation(dmat, liealg.bracket(t, basis[i], basis[j]))
            rhs = linalg.vec_add(
                liealg.bracket(t, images[i], basis[j]),
                liealg.bracket(t, basis[i], images[j]),
            )
            if lhs != rhs:
                return False
    return True


def leibniz_system(t: StructureTable) -> Matrix:
    """Linear system on flattened derivation matrices expressing Leibniz.

    One equation per basis pair i > j and output coordinate l:
    sum_k (sigma[i,j,k] d[k,l] - sigma[k,j,l] d[i,k] - sigma[i,k,l] d[j,k]) = 0.
    """
    n = t.dim
    spec = t.spec
    zero = spec.zero()
    rows = []
    for i in range(1, n + 1):
        for j in range(1, i):
            sig_ij = [t.sigma(i, j, k) for k in range(1, n + 1)]
            for l in range(1, n + 1):
                row = [zero] * (n * n)
                touched = False
                for k in range(1, n + 1):
                    c = sig_ij[k - 1]
                    if not c.is_zero():
                        idx = (k - 1) * n + (l - 1)
                        row[idx] = row[idx] + c
                        touched = True
                    c = t.sigma(k, j, l)
                    if not c.is_zero():
                        idx = (i - 1) * n + (k - 1)
                        row[idx] = row[idx] - c
                        touched = True
                    c = t.sigma(i, k, l)
                    if not c.is_zero():
                        idx = (j - 1) * n + (k - 1)
                        row[idx] = row[idx] - c
                        touched = True
                if touched:
                    rows.append(row)
    if not rows:
        rows = [[zero] * (n * n)]
    return Matrix.from_rows(spec, rows)


def compute_der(t: StructureTable) -> Subspace:
    """Der(g) as a subspace of F^(n^2) (flattened derivation matrices)."""
    return linalg.kernel(leibniz_system(t))


def compute_inn(t: StructureTable) -> Subspace:
    """Inn(g): span of the flattened ad(b_i)."""
    n = t.dim
    vecs = [
        flatten(ad_derivation(t, linalg.basis_vector(t.spec, n, i))) for i in range(n)
    ]
    return Subspace.from_vectors(t.spec, n * n, vecs)


@dataclass
class DerivationSpaces:
    """Der(g) = Inn(g) (+) U with a deterministically chosen complement U."""

    table: StructureTable
    der: Subspace
    inn: Subspace
    complement_u: Subspace

    @property
    def u_basis(self):
        return [list(r) for r in self.complement_u.basis]


def compute_spaces(t: StructureTable) -> DerivationSpaces:
    der = compute_der(t)
    inn = compute_inn(t)
    u = inn.complement_in(der)
    return DerivationSpaces(t, der, inn, u)


def embed_u_coords(spaces: DerivationSpaces, coords):
    """Map a vector in U-coordinates to the ambient F^(n^2)."""
    n2 = spaces.der.ambient
    out = linalg.vec_zero(spaces.table.spec, n2)
    for c, row in zip(coords, spaces.complement_u.basis):
        if not c.is_zero():
            out = linalg.vec_add(out, linalg.vec_scale(c, list(row)))
    return out


def candidate_matrices(spaces: DerivationSpaces, v: Subspace):
    """Derivation matrices for a basis of V <= U (V given in U-coordinates)."""
    n = spaces.table.dim
    return [
        Derivation(unflatten(spaces.table.spec, n, embed_u_coords(spaces, list(r))))
        for r in v.basis
    ]


def compute_D_z0(spaces: DerivationSpaces, t: StructureTable, z0) -> Subspace:
    """Derivations in U acting as an inner derivation on span(z0).

    Returned in U-coordinates: the projection to the U factor of the kernel
    of (delta, x) -> delta(z0) - [z0, x].
    """
    n = t.dim
    spec = t.spec
    ubasis = spaces.u_basis
    m = len(ubasis)
    cols = []
    for uvec in ubasis:
        cols.append(apply_derivation(unflatten(spec, n, uvec), z0))
    adz = liealg.ad_matrix(t, z0)
    rows = []
    for r in range(n):
        row = [cols[i][r] for i in range(m)]
        row.extend(-adz.entry(r, j) for j in range(n))
        rows.append(row)
    ker = linalg.kernel(Matrix.from_rows(spec, rows))
    projected = [list(b)[:m] for b in ker.basis]
    return Subspace.from_vectors(spec, m, projected)


# ---------------------------------------------------------------------------
# probe plan and refinement
# ---------------------------------------------------------------------------

@dataclass
class ProbePlan:
    """Deterministic probe sequence: basis vectors, pairwise sums (over a
    finite field: b_i + a*b_j for every scalar a, covering all projective
    points of support <= 2), then seeded random vectors up to `budget`
    total probes; stop once the intersection has been stable for
    `patience` consecutive random probes."""

    seed: int = 0
    budget: int = 5000
    patience: int = 25


def _random_coord(spec: FieldSpec, rng: random.Random):
    if spec.kind == FINITE:
        return spec.element_from_index(rng.randrange(spec.size))
    if spec.kind == RATIONAL:
        return spec.from_int(rng.randint(-3, 3))
    re_part = rng.randint(-3, 3)
    im_part = rng.randint(-3, 3)
    return FieldElement(spec, (Fraction(re_part), Fraction(im_part)))


def probe_sequence(t: StructureTable, plan: ProbePlan):
    """Yields (z0, phase) probes; everything before the random phase is
    deterministic and independent of the seed."""
    n = t.dim
    spec = t.spec
    count = 0
    for i in range(n):
        yield linalg.basis_vector(spec, n, i), "basis"
        count += 1
    for i in range(n):
        for j in range(i + 1, n):
            v = linalg.basis_vector(spec, n, i)
            v[j] = spec.one()
            yield v, "pair"
            count += 1
    if spec.kind == FINITE and spec.size > 2:
        # remaining projective 2-support points: b_i + a*b_j for a not in {0, 1}
        for i in range(n):
            for j in range(i + 1, n):
                for a in range(2, spec.size):
                    if count >= plan.budget:
                        return
                    v = linalg.basis_vector(spec, n, i)
                    v[j] = spec.element_from_index(a)
                    yield v, "pair"
                    count += 1
    rng = random.Random(plan.seed)
    while count < plan.budget:
        v = [_random_coord(spec, rng) for _ in range(n)]
        if linalg.vec_is_zero(v):
            continue
        yield v, "random"
        count += 1


@dataclass
class RefinementResult:
    space: Subspace
    probes_used: int = 0
    stabilized: bool = False
    dim_history: list = field(default_factory=list)


def refine_candidates(
    spaces: DerivationSpaces, t: StructureTable, plan: ProbePlan
) -> RefinementResult:
    """V = intersection of D_z0 over the probe plan; upper bound for U ∩ AID.

    The structured probes (basis vectors and pairwise sums) always run in
    full; the patience cutoff applies to the random phase only.
    """
    m = spaces.complement_u.dim
    v = Subspace.full_space(t.spec, m)
    used = 0
    stable = 0
    stabilized = False
    history = [v.dim]
    for z0, phase in probe_sequence(t, plan):
        if v.dim == 0:
            stabilized = True
            break
        d = compute_D_z0(spaces, t, z0)
        new_v = v.intersect(d)
        used += 1
        if phase == "random":
            if new_v == v:
                stable += 1
                if stable >= plan.patience:
                    v = new_v
                    history.append(v.dim)
                    stabilized = True
                    break
            else:
                stable = 0
        v = new_v
        history.append(v.dim)
    if v.dim == 0:
        stabilized = True
    return RefinementResult(v, used, stabilized, history)
