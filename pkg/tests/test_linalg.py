import itertools
import random

import pytest

from lieaid import linalg
from lieaid.linalg import (
    LinalgError,
    Matrix,
    Subspace,
    _rref_generic,
    _rref_planes,
    _to_planes,
    basis_vector,
    kernel,
    rref,
    solve,
    vec_is_zero,
)
from lieaid.scalars import FieldSpec

from conftest import random_scalar


def mat(spec, rows):
    return Matrix.from_rows(spec, [[spec.from_int(x) for x in r] for r in rows])


def test_rref_identity(qq):
    m = Matrix.identity(qq, 3)
    red, rank, piv = rref(m)
    assert red == m and rank == 3 and piv == (0, 1, 2)


def test_rref_zero(qq):
    m = Matrix.zero(qq, 2, 3)
    red, rank, piv = rref(m)
    assert red == m and rank == 0 and piv == ()


def test_rref_proportional_rows(qq):
    m = mat(qq, [[1, 2], [2, 4]])
    red, rank, _ = rref(m)
    assert rank == 1
    assert red == mat(qq, [[1, 2], [0, 0]])


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (3, 3), (2, 3)])
def test_rref_fast_path_matches_generic(p, k):
    spec = FieldSpec.finite(p, k)
    rng = random.Random(1000 * p + k)
    for _ in range(25):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = Matrix.from_rows(
            spec,
            [[random_scalar(spec, rng) for _ in range(cols)] for _ in range(rows)],
        )
        arr = _to_planes(m)
        piv_fast = _rref_planes(arr, spec)
        rows_g = m.row_list()
        piv_gen = _rref_generic(rows_g, spec)
        assert piv_fast == piv_gen
        from lieaid.linalg import _from_planes

        assert _from_planes(spec, arr) == Matrix.from_rows(spec, rows_g)


def test_rref_idempotent(qq, gf3):
    rng = random.Random(5)
    for spec in (qq, gf3):
        for _ in range(20):
            m = Matrix.from_rows(
                spec, [[random_scalar(spec, rng) for _ in range(4)] for _ in range(3)]
            )
            red, _, _ = rref(m)
            red2, _, _ = rref(red)
            assert red == red2


def test_kernel_zero_matrix(qq):
    assert kernel(Matrix.zero(qq, 2, 3)).dim == 3


def test_kernel_invertible(qq):
    assert kernel(mat(qq, [[2, 1], [1, 1]])).dim == 0


def test_kernel_gf3_enumeration_oracle(gf3):
    # oracle: enumerate all 27 vectors of GF(3)^3 and keep solutions
    m = mat(gf3, [[1, 1, 0]])
    ker = kernel(m)
    sols = [
        v
        for v in itertools.product(range(3), repeat=3)
        if (v[0] + v[1]) % 3 == 0
    ]
    assert len(sols) == 3 ** ker.dim
    assert ker.dim == 2
    assert ker.contains([gf3.from_int(1), gf3.from_int(2), gf3.from_int(0)])
    for v in sols:
        assert ker.contains([gf3.from_int(x) for x in v])


def test_solve_identity(qq):
    m = Matrix.identity(qq, 3)
    v = [qq.from_int(4), qq.from_int(-1), qq.from_int(7)]
    assert solve(m, v) == v


def test_solve_inconsistent(qq):
    m = Matrix.zero(qq, 2, 2)
    assert solve(m, [qq.from_int(1), qq.zero()]) is None


def test_solve_dimension_mismatch(qq):
    with pytest.raises(LinalgError):
        solve(Matrix.identity(qq, 2), [qq.one()])


def test_solve_trimmed_system_at_point(qq):
    # the 6-dim nilpotent example's trimmed system evaluated at z = e1:
    # rows (-z2, z1, 0, 0), (-z3, -z4, z1, z2), (-z4, 0, 0, z1)
    m = mat(qq, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    _, rank, _ = rref(m)
    assert rank == 3
    x = solve(m, [qq.from_int(-1), qq.zero(), qq.zero()])
    assert x is not None
    assert m.mul_vec(x) == [qq.from_int(-1), qq.zero(), qq.zero()]


def test_solve_agrees_with_augmented_rank(gf3, qq):
    rng = random.Random(77)
    for spec in (gf3, qq):
        for _ in range(60):
            rows = rng.randrange(1, 5)
            cols = rng.randrange(1, 5)
            m = Matrix.from_rows(
                spec,
                [[random_scalar(spec, rng) for _ in range(cols)] for _ in range(rows)],
            )
            v = [random_scalar(spec, rng) for _ in range(rows)]
            _, rank_m, _ = rref(m)
            aug = m.hstack(Matrix(spec, rows, 1, v))
            _, rank_aug, _ = rref(aug)
            x = solve(m, v)
            assert (x is not None) == (rank_m == rank_aug)
            if x is not None:
                assert m.mul_vec(x) == v


# --- subspaces ---------------------------------------------------------------

def span(spec, ambient, vecs):
    return Subspace.from_vectors(
        spec, ambient, [[spec.from_int(x) for x in v] for v in vecs]
    )


def test_intersect_self_and_sum_zero(gf3):
    x = span(gf3, 3, [[1, 0, 2], [0, 1, 1]])
    zero = Subspace.zero_space(gf3, 3)
    assert x.intersect(x) == x
    assert x.sum(zero) == x


def test_two_lines_in_plane(qq):
    a = span(qq, 2, [[1, 0]])
    b = span(qq, 2, [[1, 1]])
    assert a.intersect(b).dim == 0
    assert a.sum(b) == Subspace.full_space(qq, 2)


def test_gf2_intersection_brute_force(gf2):
    # span{e1,e2,e1+e3} ∩ span{e3,e2+e4} in GF(2)^4, vs all 16 vectors
    a = span(gf2, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0]])
    b = span(gf2, 4, [[0, 0, 1, 0], [0, 1, 0, 1]])
    inter = a.intersect(b)
    members = []
    for v in itertools.product(range(2), repeat=4):
        fv = [gf2.from_int(x) for x in v]
        if a.contains(fv) and b.contains(fv) and any(v):
            members.append(fv)
    assert len(members) == 2**inter.dim - 1
    for fv in members:
        assert inter.contains(fv)


def test_modular_law_random(qq, gf2, gf3):
    rng = random.Random(13)
    for spec in (qq, gf2, gf3):
        for _ in range(40):
            amb = rng.randrange(1, 6)
            da = rng.randrange(0, amb + 1)
            db = rng.randrange(0, amb + 1)
            a = Subspace.from_vectors(
                spec, amb,
                [[random_scalar(spec, rng) for _ in range(amb)] for _ in range(da)],
            )
            b = Subspace.from_vectors(
                spec, amb,
                [[random_scalar(spec, rng) for _ in range(amb)] for _ in range(db)],
            )
            assert a.dim + b.dim == a.sum(b).dim + a.intersect(b).dim


def test_complement_reconstructs(gf3, qq):
    rng = random.Random(23)
    for spec in (gf3, qq):
        for _ in range(30):
            amb = rng.randrange(1, 6)
            big = Subspace.from_vectors(
                spec, amb,
                [[random_scalar(spec, rng) for _ in range(amb)] for _ in range(amb)],
            )
            small_vecs = [list(r) for r in big.basis[: rng.randrange(0, big.dim + 1)]]
            small = Subspace.from_vectors(spec, amb, small_vecs)
            comp = small.complement_in(big)
            assert small.sum(comp) == big
            assert small.intersect(comp).dim == 0


def test_complement_requires_containment(qq):
    small = span(qq, 3, [[1, 0, 0]])
    big = span(qq, 3, [[0, 1, 0]])
    with pytest.raises(LinalgError):
        small.complement_in(big)


def test_quotient_reps(gf3):
    big = span(gf3, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    small = span(gf3, 4, [[0, 1, 0, 0]])
    reps = big.quotient_reps(small)
    assert len(reps) == big.dim - small.dim
    # reps stay independent modulo small
    together = Subspace.from_vectors(gf3, 4, list(small.basis) + reps)
    assert together == big


def test_basis_is_strict_rref(gf3, qq):
    rng = random.Random(44)
    for spec in (gf3, qq):
        for _ in range(20):
            amb = rng.randrange(1, 7)
            s = Subspace.from_vectors(
                spec, amb,
                [[random_scalar(spec, rng) for _ in range(amb)] for _ in range(3)],
            )
            assert list(s.pivots) == sorted(set(s.pivots))
            for r, pc in zip(s.basis, s.pivots):
                assert r[pc] == spec.one()
                for other, opc in zip(s.basis, s.pivots):
                    if opc != pc:
                        assert other[pc].is_zero()


def test_canonical_equality(gf3):
    a = span(gf3, 3, [[1, 1, 0], [0, 1, 1]])
    b = span(gf3, 3, [[1, 2, 1], [0, 1, 1]])  # same span, different generators
    assert a == b
    assert a.basis == b.basis


def test_ambient_mismatch(qq):
    a = span(qq, 2, [[1, 0]])
    b = span(qq, 3, [[1, 0, 0]])
    with pytest.raises(LinalgError):
        a.intersect(b)
    with pytest.raises(LinalgError):
        a.contains([qq.one()] * 3)
