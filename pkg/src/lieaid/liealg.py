"""Structure-constant Lie algebras: validation, brackets, adjoints, center,
scalar extension, quotients, JSON I/O and the built-in catalog.

Basis indices are 1-based throughout (b_1..b_n).  A table stores only the
constants for i < j; antisymmetry supplies the rest structurally.
"""

from __future__ import annotations

import json
import re

from . import linalg
from .linalg import Matrix, Subspace
from .scalars import (
    GAUSSIAN,
    FieldElement,
    FieldSpec,
    ScalarError,
    embed,
    parse_scalar,
    render_scalar,
)


class LieAlgebraError(ValueError):
    pass


class JacobiError(LieAlgebraError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class StructureTable:
    """Lie algebra given by structure constants on a fixed basis.

    `constants` maps (i, j) with 1 <= i < j <= dim to a tuple of
    (k, coefficient) pairs; unlisted pairs bracket to zero.
    """

    __slots__ = ("name", "dim", "spec", "constants")

    def __init__(self, name: str, dim: int, spec: FieldSpec, constants):
        self.name = name
        self.dim = dim
        self.spec = spec
        cleaned = {}
        for (i, j), terms in constants.items():
            if not (1 <= i < j <= dim):
                raise LieAlgebraError(f"bracket pair ({i},{j}) requires 1 <= i < j <= dim")
            kept = tuple((k, c) for k, c in terms if not c.is_zero())
            for k, _ in kept:
                if not 1 <= k <= dim:
                    raise LieAlgebraError(f"index {k} out of range in constants")
            if kept:
                cleaned[(i, j)] = kept
        self.constants = cleaned

    def sigma(self, i: int, j: int, k: int) -> FieldElement:
        """Structure constant of b_k in [b_i, b_j], any index order."""
        if i == j:
            return self.spec.zero()
        if i < j:
            for kk, c in self.constants.get((i, j), ()):
                if kk == k:
                    return c
            return self.spec.zero()
        for kk, c in self.constants.get((j, i), ()):
            if kk == k:
                return -c
        return self.spec.zero()

    def bracket_basis(self, i: int, j: int):
        """Coordinates of [b_i, b_j]."""
        v = linalg.vec_zero(self.spec, self.dim)
        if i == j:
            return v
        sign = None
        if i < j:
            terms = self.constants.get((i, j), ())
        else:
            terms = self.constants.get((j, i), ())
            sign = True
        for k, c in terms:
            v[k - 1] = -c if sign else c
        return v

    def __repr__(self):
        return f"StructureTable({self.name}, dim {self.dim} over {self.spec.describe()})"


def bracket(t: StructureTable, x, y):
    """[x, y] for coordinate vectors x, y."""
    if len(x) != t.dim or len(y) != t.dim:
        raise LieAlgebraError("dimension mismatch")
    out = linalg.vec_zero(t.spec, t.dim)
    for (i, j), terms in t.constants.items():
        coef = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if coef.is_zero():
            continue
        for k, c in terms:
            out[k - 1] = out[k - 1] + coef * c
    return out


def jacobi_violations(t: StructureTable, first_only: bool = True):
    """Basis triples (i, j, k) violating the Jacobi identity."""
    n = t.dim
    bad = []
    basis = [linalg.basis_vector(t.spec, n, i) for i in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            bij = bracket(t, basis[i - 1], basis[j - 1])
            for k in range(j + 1, n + 1):
                s = bracket(t, bij, basis[k - 1])
                s = linalg.vec_add(
                    s, bracket(t, bracket(t, basis[j - 1], basis[k - 1]), basis[i - 1])
                )
                s = linalg.vec_add(
                    s, bracket(t, bracket(t, basis[k - 1], basis[i - 1]), basis[j - 1])
                )
                if not linalg.vec_is_zero(s):
                    bad.append((i, j, k))
                    if first_only:
                        return bad
    return bad


def validate(t: StructureTable) -> None:
    """Raise JacobiError on the first violating basis triple."""
    bad = jacobi_violations(t)
    if bad:
        raise JacobiError(bad[0])


def ad_matrix(t: StructureTable, a) -> Matrix:
    """Operator matrix of b -> [a, b]: entry (k, j) is the b_k-coordinate of [a, b_j]."""
    n = t.dim
    zero = t.spec.zero()
    ents = [zero] * (n * n)
    for (i, j), terms in t.constants.items():
        ai, aj = a[i - 1], a[j - 1]
        if not ai.is_zero():
            for k, c in terms:  # contribution to column j
                ents[(k - 1) * n + (j - 1)] = ents[(k - 1) * n + (j - 1)] + ai * c
        if not aj.is_zero():
            for k, c in terms:  # [a, b_i] picks up -c from the (i,j) entry
                ents[(k - 1) * n + (i - 1)] = ents[(k - 1) * n + (i - 1)] - aj * c
    return Matrix(t.spec, n, n, ents)


def center(t: StructureTable) -> Subspace:
    """z(g) = kernel of a -> ad(a), computed from the stacked adjoint system."""
    n = t.dim
    zero = t.spec.zero()
    rows = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            row = [t.sigma(i, j, k) for i in range(1, n + 1)]
            if not linalg.vec_is_zero(row):
                rows.append(row)
    if not rows:
        return Subspace.full_space(t.spec, n)
    return linalg.kernel(Matrix.from_rows(t.spec, rows))


def extend_scalars(t: StructureTable, new_spec: FieldSpec) -> StructureTable:
    """Reinterpret the constants in a larger field (Q->Q(i), GF(p)->GF(p^k))."""
    constants = {
        pair: tuple((k, embed(c, new_spec)) for k, c in terms)
        for pair, terms in t.constants.items()
    }
    return StructureTable(f"{t.name}@{new_spec.describe()}", t.dim, new_spec, constants)


def quotient_by_ideal(t: StructureTable, ideal: Subspace, name: str):
    """Quotient Lie algebra g/ideal with induced bracket.

    Returns (table, reps) where reps are coordinate vectors of g whose
    cosets form the quotient basis.  The ideal condition [g, ideal] <= ideal
    is checked.
    """
    n = t.dim
    spec = t.spec
    basis = [linalg.basis_vector(spec, n, i) for i in range(n)]
    for r in ideal.basis:
        for b in basis:
            if not ideal.contains(bracket(t, list(r), b)):
                raise LieAlgebraError("subspace is not an ideal")
    full = Subspace.full_space(spec, n)
    reps = full.quotient_reps(ideal)
    m = len(reps)

    def coords_mod(v):
        # coordinates of v in the reps basis, modulo the ideal
        stacked = Matrix.from_rows(spec, list(ideal.basis) + reps).transpose()
        sol = linalg.solve(stacked, v)
        if sol is None:
            raise LieAlgebraError("vector not in span of ideal + reps")
        return sol[ideal.dim :]

    constants = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = coords_mod(bracket(t, reps[a], reps[b]))
            terms = tuple((k + 1, c) for k, c in enumerate(w) if not c.is_zero())
            if terms:
                constants[(a + 1, b + 1)] = terms
    table = StructureTable(name, m, spec, constants)
    validate(table)
    return table, reps


# ---------------------------------------------------------------------------
# JSON structure-constant format
# ---------------------------------------------------------------------------

def to_json(t: StructureTable) -> dict:
    brackets = []
    for (i, j) in sorted(t.constants):
        terms = [
            {"k": k, "c": render_scalar(c)} for k, c in t.constants[(i, j)]
        ]
        brackets.append({"i": i, "j": j, "terms": terms})
    return {
        "name": t.name,
        "field": t.spec.to_json(),
        "dim": t.dim,
        "brackets": brackets,
    }


def from_json(data: dict, skip_validate: bool = False) -> StructureTable:
    try:
        spec = FieldSpec.from_json(data["field"])
        dim = int(data["dim"])
        name = str(data.get("name", "unnamed"))
        constants = {}
        for br in data.get("brackets", []):
            i, j = int(br["i"]), int(br["j"])
            if i >= j:
                raise LieAlgebraError(f"bracket pair ({i},{j}) must have i < j")
            terms = tuple(
                (int(term["k"]), parse_scalar(spec, term["c"]))
                for term in br.get("terms", [])
            )
            if (i, j) in constants:
                raise LieAlgebraError(f"duplicate bracket pair ({i},{j})")
            constants[(i, j)] = terms
    except (KeyError, TypeError, ValueError, ScalarError) as exc:
        if isinstance(exc, LieAlgebraError):
            raise
        raise LieAlgebraError(f"malformed structure-constant JSON: {exc}") from exc
    t = StructureTable(name, dim, spec, constants)
    if not skip_validate:
        validate(t)
    return t


def load_file(path: str, skip_validate: bool = False) -> StructureTable:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return from_json(data, skip_validate=skip_validate)


def save_file(t: StructureTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(t), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _c(spec, n):
    return spec.from_int(n)


def _table(name, dim, spec, raw):
    constants = {
        pair: tuple((k, _c(spec, c)) for k, c in terms) for pair, terms in raw.items()
    }
    t = StructureTable(name, dim, spec, constants)
    validate(t)
    return t


def _abelian(n: int, spec: FieldSpec) -> StructureTable:
    return _table(f"abelian({n})", n, spec, {})


def _heisenberg3(spec: FieldSpec) -> StructureTable:
    return _table("heisenberg3", 3, spec, {(1, 2): ((3, 1),)})


def _g6_23() -> StructureTable:
    spec = FieldSpec.rational()
    raw = {
        (1, 2): ((3, 1),),
        (1, 3): ((5, 1),),
        (1, 4): ((6, 1),),
        (2, 4): ((5, 1),),
    }
    return _table("g6_23", 6, spec, raw)


def _dim5_L8211(spec: FieldSpec) -> StructureTable:
    raw = {
        (1, 4): ((1, 1),),
        (1, 5): ((2, -1),),
        (2, 4): ((2, 1),),
        (2, 5): ((1, 1),),
        (4, 5): ((3, 1),),
    }
    name = "dim5_L8211" if spec.kind == GAUSSIAN else "dim5_L8211_q"
    return _table(name, 5, spec, raw)


# 15-dimensional nilpotent algebra over GF(3) coming from the 3-central
# series of a group of order 3^15; all constants live in GF(3).
_G3_SAH_RAW = {
    (1, 2): ((7, 2),),
    (1, 3): ((7, 1), (8, 2)),
    (1, 4): ((10, 2),),
    (1, 5): ((11, 1),),
    (1, 6): ((12, 1),),
    (1, 10): ((13, 2),),
    (1, 11): ((14, 1), (15, 1)),
    (1, 12): ((15, 2),),
    (2, 3): ((8, 2), (9, 1)),
    (2, 4): ((12, 2),),
    (2, 5): ((10, 2), (12, 1)),
    (2, 6): ((11, 1),),
    (2, 10): ((13, 1), (15, 2)),
    (2, 11): ((13, 1), (14, 2), (15, 1)),
    (2, 12): ((14, 1), (15, 2)),
    (3, 4): ((11, 2),),
    (3, 5): ((11, 1), (12, 2)),
    (3, 6): ((10, 2), (12, 1)),
    (3, 10): ((13, 2), (14, 1)),
    (3, 11): ((13, 1), (14, 2), (15, 2)),
    (3, 12): ((13, 1), (14, 1), (15, 2)),
    (4, 7): ((13, 1),),
    (4, 8): ((15, 2),),
    (4, 9): ((14, 1), (15, 1)),
    (5, 7): ((14, 1), (15, 1)),
    (5, 8): ((13, 2), (15, 1)),
    (5, 9): ((14, 2), (15, 1)),
    (6, 7): ((15, 2),),
    (6, 8): ((14, 2), (15, 2)),
    (6, 9): ((13, 2), (15, 1)),
}


def _g3_sah() -> StructureTable:
    return _table("g3_sah", 15, FieldSpec.finite(3), _G3_SAH_RAW)


def _psl3_f3() -> StructureTable:
    """Trace-zero 3x3 matrices over GF(3) modulo scalar matrices (dim 7)."""
    spec = FieldSpec.finite(3)

    def emat(i, j):
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        return m

    def madd(a, b, s=1):
        return [[(a[i][j] + s * b[i][j]) % 3 for j in range(3)] for i in range(3)]

    def mmul(a, b):
        return [
            [sum(a[i][t] * b[t][j] for t in range(3)) % 3 for j in range(3)]
            for i in range(3)
        ]

    # basis of sl3: E12, E13, E21, E23, E31, E32, H1=E11-E22, H2=E22-E33
    offdiag = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    basis = [emat(i, j) for i, j in offdiag]
    basis.append(madd(emat(0, 0), emat(1, 1), -1))
    basis.append(madd(emat(1, 1), emat(2, 2), -1))

    def coords(m):
        # unique sl3 coordinates: off-diagonal entries direct,
        # diagonal (d0,d1,d2) with d0+d1+d2=0 is d0*H1 + (-d2)*H2
        v = [m[i][j] for i, j in offdiag]
        v.append(m[0][0])
        v.append((-m[2][2]) % 3)
        return [spec.from_int(x) for x in v]

    constants = {}
    for a in range(8):
        for b in range(a + 1, 8):
            comm = madd(mmul(basis[a], basis[b]), mmul(basis[b], basis[a]), -1)
            w = coords(comm)
            terms = tuple((k + 1, c) for k, c in enumerate(w) if not c.is_zero())
            if terms:
                constants[(a + 1, b + 1)] = terms
    sl3 = StructureTable("sl3_f3", 8, spec, constants)
    validate(sl3)
    # identity = H1 + 2*H2 spans the scalar matrices inside sl3 in char 3
    ident = linalg.vec_zero(spec, 8)
    ident[6] = spec.from_int(1)
    ident[7] = spec.from_int(2)
    ideal = Subspace.from_vectors(spec, 8, [ident])
    table, _ = quotient_by_ideal(sl3, ideal, "psl3_f3")
    return table


_FIELD_ARG = {
    "": None,
    "q": FieldSpec.rational(),
    "rational": FieldSpec.rational(),
    "qi": FieldSpec.gaussian(),
    "gaussian": FieldSpec.gaussian(),
    "gaussian_rational": FieldSpec.gaussian(),
}


def parse_field_name(text: str) -> FieldSpec:
    """Field names used on the command line: q, qi, gf(q) or gf(p^k).

    A composite gf(q) such as gf(27) is factored as a prime power.
    """
    text = text.strip().lower()
    if text in _FIELD_ARG and _FIELD_ARG[text] is not None:
        return _FIELD_ARG[text]
    m = re.fullmatch(r"gf\((\d+)(?:\^(\d+))?\)", text)
    if m:
        base = int(m.group(1))
        k = int(m.group(2) or 1)
        if k == 1 and base > 1:
            p = 2
            while p * p <= base:
                if base % p == 0:
                    break
                p += 1
            else:
                p = base
            if p != base:
                q = base
                k = 0
                while q > 1 and q % p == 0:
                    q //= p
                    k += 1
                if q != 1:
                    raise LieAlgebraError(f"{base} is not a prime power")
                return FieldSpec.finite(p, k)
        return FieldSpec.finite(base, k)
    raise LieAlgebraError(f"unknown field name {text!r}")


def catalog_names():
    return [
        "abelian(n[,field])",
        "heisenberg3[(field)]",
        "g6_23",
        "dim5_L8211",
        "dim5_L8211_q",
        "g3_sah",
        "psl3_f3",
    ]


def catalog(name: str) -> StructureTable:
    """Built-in algebras; abelian/heisenberg3 accept an optional field argument."""
    name = name.strip()
    m = re.fullmatch(r"abelian\((\d+)(?:,(.+))?\)", name)
    if m:
        spec = parse_field_name(m.group(2)) if m.group(2) else FieldSpec.rational()
        return _abelian(int(m.group(1)), spec)
    m = re.fullmatch(r"heisenberg3(?:\((.*)\))?", name)
    if m:
        spec = parse_field_name(m.group(1)) if m.group(1) else FieldSpec.rational()
        return _heisenberg3(spec)
    if name == "g6_23":
        return _g6_23()
    if name == "dim5_L8211":
        return _dim5_L8211(FieldSpec.gaussian())
    if name == "dim5_L8211_q":
        return _dim5_L8211(FieldSpec.rational())
    if name == "g3_sah":
        return _g3_sah()
    if name == "psl3_f3":
        return _psl3_f3()
    raise LieAlgebraError(f"unknown catalog name {name!r}")
