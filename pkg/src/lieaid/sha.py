"""Quotient Lie algebras of derivation subspaces: Sha(g) = AID(g)/Inn(g)
and Out(g) = Der(g)/Inn(g), with explicit structure constants.

Numerator and denominator are subspaces of flattened derivation matrices;
the induced bracket is the matrix commutator in the package's derivation
convention.  The denominator must be an ideal of the numerator, which is
checked; well-definedness of the quotient bracket follows.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import liealg, linalg
from .derivations import derivation_commutator, flatten, unflatten
from .liealg import StructureTable
from .linalg import Matrix, Subspace


class QuotientError(ValueError):
    pass


@dataclass
class QuotientAlgebra:
    """Quotient of derivation subspaces with explicit structure constants."""

    table: StructureTable
    coset_reps: list  # flattened derivation vectors; cosets form the basis
    denominator: Subspace
    complement_closed: bool  # span(coset_reps) closed under bracket on its own

    @property
    def dim(self) -> int:
        return self.table.dim


def _coords_mod(spec, denominator: Subspace, reps, vec):
    """Coordinates of vec in the reps basis, modulo the denominator."""
    stacked = Matrix.from_rows(spec, list(denominator.basis) + reps).transpose()
    sol = linalg.solve(stacked, vec)
    if sol is None:
        return None
    return sol[denominator.dim :]


def build_quotient(
    numerator: Subspace,
    denominator: Subspace,
    t: StructureTable,
    name: str = "quotient",
    coset_reps=None,
) -> QuotientAlgebra:
    """Quotient Lie algebra numerator/denominator under the derivation bracket.

    `coset_reps` (flattened vectors inside the numerator) may be supplied,
    e.g. the certified candidate basis; by default representatives come
    from the numerator's canonical basis.
    """
    n = t.dim
    spec = t.spec
    if numerator.ambient != n * n or denominator.ambient != n * n:
        raise QuotientError("spaces must consist of flattened n x n derivations")
    if not numerator.contains_subspace(denominator):
        raise QuotientError("denominator is not contained in the numerator")
    if coset_reps is None:
        reps = numerator.quotient_reps(denominator)
    else:
        reps = [list(r) for r in coset_reps]
        if len(reps) != numerator.dim - denominator.dim:
            raise QuotientError("wrong number of coset representatives")
        for r in reps:
            if not numerator.contains(r):
                raise QuotientError("coset representative outside the numerator")
        if Subspace.from_vectors(spec, n * n, reps).intersect(denominator).dim:
            raise QuotientError("coset representatives meet the denominator")
    rep_mats = [unflatten(spec, n, r) for r in reps]
    den_mats = [unflatten(spec, n, list(r)) for r in denominator.basis]
    num_mats = rep_mats + den_mats
    # ideal check: [denominator, numerator] <= denominator
    for i, d in enumerate(den_mats):
        for x in num_mats:
            comm = flatten(derivation_commutator(d, x))
            if not denominator.contains(comm):
                raise QuotientError(
                    f"denominator is not an ideal: bracket with basis element "
                    f"{i} escapes"
                )
    m = len(reps)
    constants = {}
    closed = True
    rep_space = Subspace.from_vectors(spec, n * n, reps)
    for a in range(m):
        for b in range(a + 1, m):
            comm = flatten(derivation_commutator(rep_mats[a], rep_mats[b]))
            coords = _coords_mod(spec, denominator, reps, comm)
            if coords is None:
                raise QuotientError(
                    "numerator is not closed under the bracket"
                )
            if not rep_space.contains(comm):
                closed = False
            terms = tuple((k + 1, c) for k, c in enumerate(coords) if not c.is_zero())
            if terms:
                constants[(a + 1, b + 1)] = terms
    table = StructureTable(name, m, spec, constants)
    liealg.validate(table)
    return QuotientAlgebra(table, reps, denominator, closed)


def is_abelian(q: QuotientAlgebra) -> bool:
    return not q.table.constants


def bracket_cosets(q: QuotientAlgebra, x, y):
    """Induced bracket on coset coordinate vectors."""
    return liealg.bracket(q.table, x, y)


def coset_coordinates(q: QuotientAlgebra, vec):
    """Coset coordinates of a flattened derivation, or None if outside."""
    spec = q.table.spec
    return _coords_mod(spec, q.denominator, q.coset_reps, list(vec))
