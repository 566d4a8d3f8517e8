"""Shared fixtures and independent little oracles used across the suite.

The mod-p helpers here are deliberately self-contained (plain ints, no
package imports) so tests can cross-check package results against an
independent computation path.
"""

import random

import pytest

from lieaid.scalars import FieldSpec


@pytest.fixture(scope="session")
def qq():
    return FieldSpec.rational()


@pytest.fixture(scope="session")
def qi():
    return FieldSpec.gaussian()


@pytest.fixture(scope="session")
def gf2():
    return FieldSpec.finite(2)


@pytest.fixture(scope="session")
def gf3():
    return FieldSpec.finite(3)


@pytest.fixture(scope="session")
def gf27():
    return FieldSpec.finite(3, 3)


# --- independent integer mod-p linear algebra --------------------------------

def modp_rref(rows, p):
    """Row-reduce a list of int lists mod p; returns (rows, pivot cols)."""
    rows = [[x % p for x in r] for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        sel = next((i for i in range(r, m) if rows[i][c] % p), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    return rows, piv


def modp_rank(rows, p):
    return len(modp_rref(rows, p)[1])


def modp_in_colspace(mat_rows, v, p):
    """v in column space of the matrix given by rows (both ints mod p)."""
    aug = [row + [x] for row, x in zip(mat_rows, v)]
    ncols = len(mat_rows[0]) if mat_rows else 0
    return modp_rank(aug, p) == modp_rank(mat_rows, p)


def random_scalar(spec, rng: random.Random):
    from fractions import Fraction

    from lieaid.scalars import FINITE, GAUSSIAN, FieldElement

    if spec.kind == FINITE:
        return spec.element_from_index(rng.randrange(spec.size))
    if spec.kind == GAUSSIAN:
        return FieldElement(
            spec,
            (
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
            ),
        )
    return spec.from_fraction(Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
