"""Certification of almost-inner derivations.

Pipeline: refine a candidate space V inside the complement U by
intersecting spaces D_z, then prove or refute each candidate.  Over a
finite field that fits the scan budget, an exhaustive projective scan of
rank conditions decides membership completely.  Otherwise each candidate
is attacked with the minors method: the ideal generated by the r x r
minors of the augmented matrix must be contained in the radical of the
ideal of r x r minors of M(z) for every r; containment certifies the
candidate over any base field, a failed containment triggers a search for
an explicit witness point where the rank visibly drops.  Witnesses shrink
V and the loop repeats; a failed containment without a witness leaves the
candidate inconclusive (refutation would require a rational point that may
not exist).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import liealg, linalg, polyideal, scankernel
from .derivations import (
    DerivationSpaces,
    ProbePlan,
    RefinementResult,
    candidate_matrices,
    compute_D_z0,
    compute_spaces,
    embed_u_coords,
    refine_candidates,
)
from .liealg import StructureTable
from .linalg import Matrix, Subspace
from .polyideal import Poly, PolyIdeal, PolyMatrix, PolyRing, minors
from .scalars import FINITE, RATIONAL, FieldElement, FieldSpec, render_scalar


class CertificationError(RuntimeError):
    pass


@dataclass
class AidConfig:
    seed: int = 0
    probe_budget: int = 5000
    patience: int = 25
    minors_dim_limit: int = 8
    scan_budget: int = 10**8  # max projective points for the exhaustive scan
    witness_height: int = 3
    witness_budget: int = 2_000_000  # max nodes in the witness grid search
    threads: int = 1

    def plan(self) -> ProbePlan:
        return ProbePlan(self.seed, self.probe_budget, self.patience)


# ---------------------------------------------------------------------------
# symbolic system M(z), v_delta(z)
# ---------------------------------------------------------------------------

@dataclass
class SymbolicSystem:
    """Trimmed symbolic rank system for a set of candidate derivations.

    m[r][c] is the linear form sum_i sigma[i, kept_cols[c], kept_rows[r]] z_i;
    vcols[ci][r] is the linear form sum_j d[j, kept_rows[r]] z_j for
    candidate ci.  Rows with identically zero M-row and candidate entries
    and identically zero M-columns are dropped; rank comparisons are
    unaffected.
    """

    table: StructureTable
    ring: PolyRing
    m: PolyMatrix
    vcols: list
    candidates: list
    kept_rows: tuple
    kept_cols: tuple
    _minor_ideals: dict = field(default_factory=dict)

    @property
    def nrows(self) -> int:
        return self.m.rows

    @property
    def mcols(self) -> int:
        return self.m.cols

    def minor_ideal(self, r: int) -> PolyIdeal:
        """Ideal generated by the nonzero r x r minors of the trimmed M."""
        if r not in self._minor_ideals:
            if r > min(self.m.rows, self.m.cols):
                gens = []
            else:
                gens = [w for w in minors(self.m, r) if w]
            seen, uniq = set(), []
            for w in gens:
                key = w.monic()
                if key not in seen:
                    seen.add(key)
                    uniq.append(w)
            self._minor_ideals[r] = PolyIdeal(self.ring, uniq)
        return self._minor_ideals[r]

    def augmented_matrix(self, ci: int) -> PolyMatrix:
        ents = []
        for r in range(self.m.rows):
            ents.extend(self.m.entry(r, c) for c in range(self.m.cols))
            ents.append(self.vcols[ci][r])
        return PolyMatrix(self.ring, self.m.rows, self.m.cols + 1, ents)


def build_symbolic(t: StructureTable, candidates) -> SymbolicSystem:
    """Trimmed M(z) plus one symbolic column per candidate derivation."""
    n = t.dim
    spec = t.spec
    ring = PolyRing(spec, tuple(f"z{i}" for i in range(1, n + 1)))
    mfull = [[None] * n for _ in range(n)]
    for k in range(1, n + 1):
        for j in range(1, n + 1):
            coeffs = [t.sigma(i, j, k) for i in range(1, n + 1)]
            mfull[k - 1][j - 1] = Poly.linear_form(ring, coeffs)
    vfull = []
    for dmat in candidates:
        col = []
        for k in range(n):
            col.append(Poly.linear_form(ring, [dmat.entry(j, k) for j in range(n)]))
        vfull.append(col)
    kept_rows = tuple(
        k
        for k in range(n)
        if any(mfull[k][j] for j in range(n)) or any(col[k] for col in vfull)
    )
    kept_cols = tuple(j for j in range(n) if any(mfull[k][j] for k in range(n)))
    ents = [mfull[k][j] for k in kept_rows for j in kept_cols]
    m = PolyMatrix(ring, len(kept_rows), len(kept_cols), ents)
    vcols = [[col[k] for k in kept_rows] for col in vfull]
    return SymbolicSystem(t, ring, m, vcols, list(candidates), kept_rows, kept_cols)


def rank_check_at(sys: SymbolicSystem, ci: int, z) -> bool:
    """True iff the candidate acts innerly at z: v_ci(z) in colspace M(z)."""
    spec = sys.table.spec
    point = list(z)
    ments = sys.m.eval_matrix(point)
    mz = Matrix(spec, sys.nrows, sys.mcols, ments)
    vz = [p.eval(point) for p in sys.vcols[ci]]
    return linalg.solve(mz, vz) is not None


# ---------------------------------------------------------------------------
# minors certification
# ---------------------------------------------------------------------------

@dataclass
class ContainmentLevel:
    r: int
    minors_checked: int
    holds: bool
    failing: list = field(default_factory=list)  # minors outside the radical


@dataclass
class MinorsOutcome:
    certified: bool
    levels: list
    failing_r: int | None = None
    obstruction: list | None = None  # Groebner basis of the first failed test
    reason: str | None = None

    @property
    def failing_minors(self):
        if self.failing_r is None:
            return []
        return next(l.failing for l in self.levels if l.r == self.failing_r)


def certify_minors(sys: SymbolicSystem, ci: int, cfg: AidConfig) -> MinorsOutcome:
    """Check containment of augmented minors in radicals for r = 1..R.

    R runs to min(rows, mcols + 1); the r = 1 level is included because a
    point with M(z) = 0 but v(z) != 0 already witnesses a rank drop.
    Stops at the first failing level and keeps every non-contained minor
    there as a witness-search target.
    """
    if sys.table.dim > cfg.minors_dim_limit:
        return MinorsOutcome(
            False, [], reason="too large for minors method"
        )
    aug = sys.augmented_matrix(ci)
    levels = []
    rmax = min(sys.nrows, sys.mcols + 1)
    for r in range(1, rmax + 1):
        ideal = sys.minor_ideal(r)
        failing = []
        obstruction = None
        checked = 0
        for w in minors(aug, r):
            if not w:
                continue
            checked += 1
            if ideal.contains(w):
                continue
            augmented = polyideal.radical_augmented_ideal(w, ideal)
            if augmented.is_trivial():
                continue
            failing.append(w)
            if obstruction is None:
                obstruction = augmented.groebner()
        levels.append(ContainmentLevel(r, checked, not failing, failing))
        if failing:
            return MinorsOutcome(
                False,
                levels,
                failing_r=r,
                obstruction=[g.render() for g in obstruction],
            )
    return MinorsOutcome(True, levels)


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------

def _grid_values(spec: FieldSpec, height: int):
    """Deterministic small-first value order for witness coordinates."""
    if spec.kind == FINITE:
        return [spec.element_from_index(i) for i in range(spec.size)]
    if spec.kind == RATIONAL:
        vals = [spec.from_int(0)]
        for h in range(1, height + 1):
            vals.append(spec.from_int(h))
            vals.append(spec.from_int(-h))
        return vals
    vals = []
    for h in range(height + 1):
        shell = []
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                if max(abs(a), abs(b)) == h:
                    shell.append((a, b))
        shell.sort()
        vals.extend(FieldElement(spec, (Fraction(a), Fraction(b))) for a, b in shell)
    return vals


@dataclass
class WitnessSearch:
    point: list | None = None  # full z coordinates, or None
    nodes: int = 0
    exhausted_budget: bool = False


def find_witness(
    sys: SymbolicSystem, gens, targets, cfg: AidConfig
) -> WitnessSearch:
    """Hunt for z with every polynomial in `gens` zero and some target nonzero.

    Backtracking over grid assignments in reverse variable order, pruning a
    branch as soon as a fully evaluated generator is a nonzero constant.
    Over a finite field the grid is the whole field, so the search is
    exhaustive; over Q and Q(i) the grid holds integer (Gaussian integer)
    coordinates up to the configured height, which covers every projective
    witness class of that height since all the polynomials involved are
    homogeneous.
    """
    ring = sys.ring
    spec = ring.spec
    nv = ring.nvars
    values = _grid_values(spec, cfg.witness_height)
    state = WitnessSearch()

    def rec(var, polys, wpoly):
        # variables var+1..nv-1 are already assigned (assignment runs backwards)
        if state.exhausted_budget:
            return None
        live = []
        for p in polys:
            if not p:
                continue
            if p.degree() == 0:
                return None  # nonzero constant: no common zero below this node
            live.append(p)
        if not wpoly:
            return None  # target already collapsed to zero on this branch
        if var < 0:
            return [] if wpoly.degree() == 0 else None
        for val in values:
            state.nodes += 1
            if state.nodes > cfg.witness_budget:
                state.exhausted_budget = True
                return None
            sub = [p.partial_eval(var, val) for p in live]
            tail = rec(var - 1, sub, wpoly.partial_eval(var, val))
            if tail is not None:
                return [val] + tail
        return None

    gens = list(gens)
    for w in targets:
        found = rec(nv - 1, gens, w)
        if found is not None:
            found.reverse()  # assignment ran from z_n down to z_1
            state.point = found
            return state
        if state.exhausted_budget:
            break
    return state


def witness_validates(sys: SymbolicSystem, ci: int, z) -> bool:
    """Re-evaluate a stored witness: the rank really drops at z."""
    return not rank_check_at(sys, ci, z)


def refine_with_witness(
    spaces: DerivationSpaces, t: StructureTable, v: Subspace, z
) -> Subspace:
    """V ∩ D_z; an error if the witness fails to cut V (certification bug)."""
    d = compute_D_z0(spaces, t, z)
    new_v = v.intersect(d)
    if new_v.dim >= v.dim:
        raise CertificationError("witness point does not shrink the candidate space")
    return new_v


# ---------------------------------------------------------------------------
# exhaustive verification over finite fields
# ---------------------------------------------------------------------------

@dataclass
class ScanVerdict:
    passed: bool
    fail_index: int = -1
    witness: list | None = None


@dataclass
class ScanResult:
    verdicts: list
    points: int
    method: str  # "packed" or "generic"


def _scan_system(sys: SymbolicSystem) -> scankernel.ScanSystem:
    t = sys.table
    n, p = t.dim, t.spec.p
    rows, mcols, s = sys.nrows, sys.mcols, len(sys.candidates)
    mtab = np.zeros((n, rows * mcols), dtype=np.float64)
    for r in range(rows):
        for c in range(mcols):
            for e, coef in sys.m.entry(r, c).terms.items():
                mtab[e.index(1), r * mcols + c] = coef.val
    vtab = np.zeros((n, rows * s), dtype=np.float64)
    for ci in range(s):
        for r in range(rows):
            for e, coef in sys.vcols[ci][r].terms.items():
                vtab[e.index(1), r * s + ci] = coef.val
    return scankernel.ScanSystem(p, n, rows, mcols, s, mtab, vtab)


def exhaustive_verify(sys: SymbolicSystem, cfg: AidConfig) -> ScanResult:
    """Run the rank check at one representative per projective class.

    Complete over the base field: scaling z scales M(z) and v(z) alike, so
    solvability only depends on the class.  Candidates passing everywhere
    are almost-inner; each failing candidate records the first failing
    point in scan order.
    """
    t = sys.table
    spec = t.spec
    if spec.kind != FINITE:
        raise CertificationError("exhaustive verification requires a finite field")
    total = scankernel.projective_count(spec.size, t.dim)
    if total > cfg.scan_budget:
        raise CertificationError(
            f"scan of {total} points exceeds budget {cfg.scan_budget}"
        )
    if spec.k == 1:
        ssys = _scan_system(sys)
        fails, points = scankernel.scan_all(ssys, threads=cfg.threads)
        verdicts = []
        for ci in range(len(sys.candidates)):
            fi = int(fails[ci])
            if fi == -1:
                verdicts.append(ScanVerdict(True))
            else:
                zint = scankernel.decode_point(spec.p, t.dim, fi)
                z = [spec.from_int(v) for v in zint]
                verdicts.append(ScanVerdict(False, fi, z))
        return ScanResult(verdicts, points, "packed")
    return _exhaustive_generic(sys, total)


def _exhaustive_generic(sys: SymbolicSystem, total: int) -> ScanResult:
    """Object-path scan for extension fields (small sizes only)."""
    t = sys.table
    spec = t.spec
    n = t.dim
    q = spec.size
    s = len(sys.candidates)
    verdicts = [ScanVerdict(True) for _ in range(s)]
    index = 0
    for f in range(n):
        for rem in range(q ** (n - 1 - f)):
            coords = [spec.zero()] * n
            coords[f] = spec.one()
            r = rem
            for pos in range(n - 1, f, -1):
                coords[pos] = spec.element_from_index(r % q)
                r //= q
            for ci in range(s):
                if verdicts[ci].passed and not rank_check_at(sys, ci, coords):
                    verdicts[ci] = ScanVerdict(False, index, list(coords))
            index += 1
    return ScanResult(verdicts, total, "generic")


# ---------------------------------------------------------------------------
# end-to-end AID computation
# ---------------------------------------------------------------------------

@dataclass
class CandidateReport:
    index: int
    verdict: str  # certified_aid | refuted | inconclusive
    method: str | None = None  # minors | exhaustive
    witness: list | None = None
    containments: list = field(default_factory=list)
    failing_r: int | None = None
    obstruction: list | None = None
    reason: str | None = None

    def to_json(self):
        return {
            "index": self.index,
            "verdict": self.verdict,
            "method": self.method,
            "witness": None
            if self.witness is None
            else [render_scalar(x) for x in self.witness],
            "containments": [
                {"r": lv.r, "minors_checked": lv.minors_checked, "holds": lv.holds}
                for lv in self.containments
            ],
            "failing_r": self.failing_r,
            "obstruction_basis": self.obstruction,
            "reason": self.reason,
        }


@dataclass
class RoundReport:
    dim_v: int
    method: str
    candidates: list
    points_scanned: int = 0

    def to_json(self):
        return {
            "dim_v": self.dim_v,
            "method": self.method,
            "points_scanned": self.points_scanned,
            "candidates": [c.to_json() for c in self.candidates],
        }


@dataclass
class AidResult:
    table: StructureTable
    spaces: DerivationSpaces
    refinement: RefinementResult
    v_final: Subspace
    aid_lower: Subspace
    aid_upper: Subspace
    exact: bool
    rounds: list
    config: AidConfig
    candidates: list = field(default_factory=list)  # final-round Derivations

    @property
    def aid(self) -> Subspace:
        if not self.exact:
            raise CertificationError("AID is only bracketed; certification incomplete")
        return self.aid_lower

    def report(self) -> dict:
        t = self.table
        cfg = self.config
        return {
            "algebra": t.name,
            "field": t.spec.to_json(),
            "dim": t.dim,
            "seed": cfg.seed,
            "config": {
                "probe_budget": cfg.probe_budget,
                "patience": cfg.patience,
                "minors_dim_limit": cfg.minors_dim_limit,
                "scan_budget": cfg.scan_budget,
                "witness_height": cfg.witness_height,
                "witness_budget": cfg.witness_budget,
            },
            "dims": {
                "der": self.spaces.der.dim,
                "inn": self.spaces.inn.dim,
                "complement": self.spaces.complement_u.dim,
                "candidates_final": self.v_final.dim,
                "aid_lower": self.aid_lower.dim,
                "aid_upper": self.aid_upper.dim,
            },
            "exact": self.exact,
            "refinement": {
                "probes": self.refinement.probes_used,
                "stabilized": self.refinement.stabilized,
                "dim_v": self.refinement.space.dim,
            },
            "rounds": [r.to_json() for r in self.rounds],
        }


def _embed_subspace(spaces: DerivationSpaces, v: Subspace) -> Subspace:
    vecs = [embed_u_coords(spaces, list(r)) for r in v.basis]
    return Subspace.from_vectors(spaces.table.spec, spaces.der.ambient, vecs)


def candidate_vectors(result: "AidResult"):
    """Flattened certified candidate basis (order matches report indices)."""
    return [
        embed_u_coords(result.spaces, list(r)) for r in result.v_final.basis
    ]


def compute_aid(t: StructureTable, cfg: AidConfig | None = None) -> AidResult:
    """Determine AID(g) = Inn(g) (+) (certified part of V), with report.

    Returns exact bounds when certification is complete; otherwise
    aid_lower / aid_upper bracket the answer and the report explains the
    gap per candidate.
    """
    cfg = cfg or AidConfig()
    spaces = compute_spaces(t)
    refinement = refine_candidates(spaces, t, cfg.plan())
    v = refinement.space
    spec = t.spec
    rounds = []
    use_scan = (
        spec.kind == FINITE
        and scankernel.projective_count(spec.size, t.dim) <= cfg.scan_budget
    )
    for _ in range(spaces.complement_u.dim + 1):
        if v.dim == 0:
            aid = spaces.inn
            return AidResult(t, spaces, refinement, v, aid, aid, True, rounds, cfg)
        cands = candidate_matrices(spaces, v)
        sys = build_symbolic(t, [c.matrix for c in cands])
        if use_scan:
            scan = exhaustive_verify(sys, cfg)
            reports = []
            fail_points = []
            for ci, verdict in enumerate(scan.verdicts):
                if verdict.passed:
                    cands[ci].tag = "certified_aid"
                    reports.append(
                        CandidateReport(ci, "certified_aid", method="exhaustive")
                    )
                else:
                    reports.append(
                        CandidateReport(
                            ci, "refuted", method="exhaustive", witness=verdict.witness
                        )
                    )
                    fail_points.append(verdict.witness)
            rounds.append(RoundReport(v.dim, "exhaustive", reports, scan.points))
            if not fail_points:
                aid = spaces.inn.sum(_embed_subspace(spaces, v))
                return AidResult(
                    t, spaces, refinement, v, aid, aid, True, rounds, cfg, cands
                )
            for z in fail_points:
                if v.dim == 0:
                    break
                cut = v.intersect(compute_D_z0(spaces, t, z))
                if cut.dim < v.dim:
                    v = cut
            continue
        # minors + witness path
        if t.dim > cfg.minors_dim_limit:
            reports = [
                CandidateReport(
                    ci,
                    "inconclusive",
                    reason=f"dimension {t.dim} exceeds minors limit "
                    f"{cfg.minors_dim_limit} and the field is not scannable",
                )
                for ci in range(len(cands))
            ]
            rounds.append(RoundReport(v.dim, "none", reports))
            upper = spaces.inn.sum(_embed_subspace(spaces, v))
            return AidResult(
                t, spaces, refinement, v, spaces.inn, upper, False, rounds, cfg, cands
            )
        reports = []
        witness_point = None
        for ci in range(len(cands)):
            outcome = certify_minors(sys, ci, cfg)
            if outcome.certified:
                cands[ci].tag = "certified_aid"
                reports.append(
                    CandidateReport(
                        ci, "certified_aid", method="minors",
                        containments=outcome.levels,
                    )
                )
                continue
            if outcome.failing_r is None:
                reports.append(
                    CandidateReport(
                        ci, "inconclusive", method="minors", reason=outcome.reason
                    )
                )
                continue
            search = find_witness(
                sys, sys.minor_ideal(outcome.failing_r).generators,
                outcome.failing_minors, cfg,
            )
            if search.point is not None:
                reports.append(
                    CandidateReport(
                        ci, "refuted", method="minors", witness=search.point,
                        containments=outcome.levels, failing_r=outcome.failing_r,
                        obstruction=outcome.obstruction,
                    )
                )
                witness_point = search.point
                break
            reason = (
                "containment failed but no witness point found on the grid"
                if not search.exhausted_budget
                else "containment failed; witness search budget exhausted"
            )
            reports.append(
                CandidateReport(
                    ci, "inconclusive", method="minors",
                    containments=outcome.levels, failing_r=outcome.failing_r,
                    obstruction=outcome.obstruction, reason=reason,
                )
            )
        rounds.append(RoundReport(v.dim, "minors", reports))
        if witness_point is not None:
            v = refine_with_witness(spaces, t, v, witness_point)
            continue
        certified = [
            embed_u_coords(spaces, list(v.basis[r.index]))
            for r in reports
            if r.verdict == "certified_aid"
        ]
        if len(certified) == len(cands):
            aid = spaces.inn.sum(_embed_subspace(spaces, v))
            return AidResult(
                t, spaces, refinement, v, aid, aid, True, rounds, cfg, cands
            )
        lower = spaces.inn.sum(
            Subspace.from_vectors(spec, spaces.der.ambient, certified)
        )
        upper = spaces.inn.sum(_embed_subspace(spaces, v))
        return AidResult(
            t, spaces, refinement, v, lower, upper, False, rounds, cfg, cands
        )
    raise CertificationError("refinement loop failed to terminate")


# ---------------------------------------------------------------------------
# central almost-inner derivations
# ---------------------------------------------------------------------------

def maps_into_center(t: StructureTable) -> Subspace:
    """Flattened linear maps g -> z(g)."""
    n = t.dim
    zc = liealg.center(t)
    vecs = []
    for j in range(n):
        for c in zc.basis:
            vec = linalg.vec_zero(t.spec, n * n)
            for k in range(n):
                vec[j * n + k] = c[k]
            vecs.append(vec)
    return Subspace.from_vectors(t.spec, n * n, vecs)


def compute_caid(t: StructureTable, aid: Subspace) -> Subspace:
    """CAID = AID ∩ (Inn + {maps into the center})."""
    from .derivations import compute_inn

    inn = compute_inn(t)
    return aid.intersect(inn.sum(maps_into_center(t)))
