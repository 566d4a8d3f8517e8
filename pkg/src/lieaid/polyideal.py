"""Sparse multivariate polynomials over exact fields, Buchberger's algorithm,
ideal and radical membership, and minors of polynomial matrices.

The monomial order is degree-reverse-lexicographic over the declared
variable order, fixed per ring.  Radical membership is decided without
computing radicals: f lies in the radical of I iff 1 lies in the ideal
generated by I and 1 - y*f in a ring with one fresh variable y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .scalars import RATIONAL, FieldElement, FieldSpec


class PolyError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    spec: FieldSpec
    names: tuple[str, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def extend(self, name: str) -> "PolyRing":
        if name in self.names:
            raise PolyError(f"variable {name!r} already in ring")
        return PolyRing(self.spec, self.names + (name,))


def grevlex_key(exp):
    """Sort key: higher key = larger monomial in grevlex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Poly:
    """Polynomial as a dict from exponent tuples to nonzero FieldElements."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring: PolyRing) -> "Poly":
        return Poly(ring, {})

    @staticmethod
    def const(ring: PolyRing, c: FieldElement) -> "Poly":
        if c.is_zero():
            return Poly(ring, {})
        return Poly(ring, {(0,) * ring.nvars: c})

    @staticmethod
    def variable(ring: PolyRing, idx: int) -> "Poly":
        exp = [0] * ring.nvars
        exp[idx] = 1
        return Poly(ring, {tuple(exp): ring.spec.one()})

    @staticmethod
    def linear_form(ring: PolyRing, coeffs) -> "Poly":
        terms = {}
        for i, c in enumerate(coeffs):
            if not c.is_zero():
                exp = [0] * ring.nvars
                exp[i] = 1
                terms[tuple(exp)] = c
        return Poly(ring, terms)

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def lead(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise PolyError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = -c if s is None else s - c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.ring, out)

    def scale(self, c: FieldElement) -> "Poly":
        if c.is_zero():
            return Poly(self.ring, {})
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, exp, coeff) -> "Poly":
        return Poly(
            self.ring,
            {
                tuple(a + b for a, b in zip(e, exp)): c * coeff
                for e, c in self.terms.items()
            },
        )

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.lead()
        return self.scale(lc.inverse())

    def clear_content(self) -> "Poly":
        """Over Q: scale to coprime integer coefficients (positive leading)."""
        if self.ring.spec.kind != RATIONAL or not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.val.denominator // gcd(den, c.val.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.val.numerator * den // c.val.denominator))
        scale = Fraction(den, num)
        _, lc = self.lead()
        if lc.val < 0:
            scale = -scale
        return self.scale(FieldElement(self.ring.spec, scale))

    # -- evaluation and rendering ------------------------------------------

    def eval(self, point) -> FieldElement:
        if len(point) != self.ring.nvars:
            raise PolyError("point length does not match variable count")
        acc = self.ring.spec.zero()
        for e, c in self.terms.items():
            v = c
            for x, exp in zip(point, e):
                if exp:
                    v = v * x**exp
            acc = acc + v
        return acc

    def partial_eval(self, var_idx: int, value: FieldElement) -> "Poly":
        """Substitute one variable; the result stays in the same ring."""
        out = {}
        for e, c in self.terms.items():
            if e[var_idx]:
                c = c * value ** e[var_idx]
                e = e[:var_idx] + (0,) + e[var_idx + 1 :]
            if c.is_zero():
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.ring, out)

    def lift(self, bigger: PolyRing) -> "Poly":
        """Reinterpret in a ring extended by trailing variables."""
        extra = bigger.nvars - self.ring.nvars
        if bigger.names[: self.ring.nvars] != self.ring.names or extra < 0:
            raise PolyError("not a trailing-variable ring extension")
        pad = (0,) * extra
        return Poly(bigger, {e + pad: c for e, c in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        spec = self.ring.spec
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, exp in zip(self.ring.names, e):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            cstr = str(c)
            if factors and cstr == "1":
                body = "*".join(factors)
            elif factors and cstr == "-1":
                body = "-" + "*".join(factors)
            else:
                if ("+" in cstr[1:]) or ("-" in cstr[1:]) or cstr.endswith("i"):
                    cstr = f"({cstr})"
                body = "*".join([cstr] + factors)
            parts.append(body)
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out

    def __repr__(self):
        return f"Poly({self.render()})"


# ---------------------------------------------------------------------------
# division, S-polynomials, Buchberger
# ---------------------------------------------------------------------------

def _divides(ea, eb) -> bool:
    return all(a <= b for a, b in zip(ea, eb))


def _exp_sub(ea, eb):
    return tuple(a - b for a, b in zip(ea, eb))


def _exp_lcm(ea, eb):
    return tuple(max(a, b) for a, b in zip(ea, eb))


def normal_form(f: Poly, basis) -> Poly:
    """Full remainder of f on division by the list `basis`."""
    if not basis:
        return f
    leads = [g.lead() for g in basis]
    remainder = {}
    work = dict(f.terms)
    while work:
        exp = max(work, key=grevlex_key)
        coeff = work.pop(exp)
        for (ge, gc), g in zip(leads, basis):
            if _divides(ge, exp):
                q = coeff / gc
                shift = _exp_sub(exp, ge)
                for e2, c2 in g.terms.items():
                    e = tuple(a + b for a, b in zip(e2, shift))
                    if e == exp:
                        continue
                    s = work.get(e)
                    s = -(q * c2) if s is None else s - q * c2
                    if s.is_zero():
                        work.pop(e, None)
                    else:
                        work[e] = s
                break
        else:
            remainder[exp] = coeff
    return Poly(f.ring, remainder)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    fe, fc = f.lead()
    ge, gc = g.lead()
    l = _exp_lcm(fe, ge)
    return f.mul_term(_exp_sub(l, fe), fc.inverse()) - g.mul_term(
        _exp_sub(l, ge), gc.inverse()
    )


def _autoreduce(basis):
    """Reduce each element against the others; output sorted, monic, minimal."""
    basis = [g.monic() for g in basis if g]
    # minimalize: drop elements whose lead is divisible by another lead
    basis.sort(key=lambda g: grevlex_key(g.lead()[0]))
    minimal = []
    for i, g in enumerate(basis):
        ge = g.lead()[0]
        if any(_divides(h.lead()[0], ge) for h in basis[:i]):
            continue
        if any(
            _divides(h.lead()[0], ge) and h.lead()[0] != ge for h in basis[i + 1 :]
        ):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others)
        if r:
            out.append(r.monic())
    out.sort(key=lambda g: grevlex_key(g.lead()[0]), reverse=True)
    return out


def buchberger(generators) -> list:
    """Reduced Groebner basis w.r.t. grevlex.

    Normal pair-selection strategy (minimal lcm degree, ties by pair index),
    with the coprime-lead and chain (lcm) criteria.
    """
    gens = [g for g in generators if g]
    if not gens:
        return []
    if any(g.degree() == 0 for g in gens):
        ring = gens[0].ring
        return [Poly.const(ring, ring.spec.one())]
    basis = []
    for g in sorted(gens, key=lambda g: grevlex_key(g.lead()[0])):
        r = normal_form(g, basis)
        if r:
            basis.append(r.monic())
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = set()

    def lcm_deg(pair):
        i, j = pair
        return sum(_exp_lcm(basis[i].lead()[0], basis[j].lead()[0]))

    while pairs:
        pair = min(pairs, key=lambda ij: (lcm_deg(ij), ij))
        pairs.discard(pair)
        processed.add(pair)
        i, j = pair
        fi, fj = basis[i], basis[j]
        ei, ej = fi.lead()[0], fj.lead()[0]
        l = _exp_lcm(ei, ej)
        # coprime-lead criterion
        if l == tuple(a + b for a, b in zip(ei, ej)):
            continue
        # chain criterion: some k with lead(k) | lcm and both pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(basis[k].lead()[0], l):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in processed and pjk in processed:
                skip = True
                break
        if skip:
            continue
        s = normal_form(s_polynomial(fi, fj), basis)
        if s:
            s = s.monic()
            if s.degree() == 0:
                return [Poly.const(s.ring, s.ring.spec.one())]
            basis.append(s)
            new = len(basis) - 1
            for k in range(new):
                pairs.add((k, new))
    return _autoreduce(basis)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class PolyIdeal:
    """Finitely generated ideal with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise PolyError("generator from a different ring")
            if g:
                gens.append(g.clear_content() if ring.spec.kind == RATIONAL else g)
        self.generators = gens
        self._groebner = None

    def groebner(self) -> list:
        if self._groebner is None:
            self._groebner = buchberger(self.generators)
        return self._groebner

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise PolyError("ring mismatch")
        return normal_form(f, self.groebner()).is_zero()

    def is_trivial(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].degree() == 0


def groebner_basis(ideal: PolyIdeal) -> list:
    return ideal.groebner()


def ideal_member(f: Poly, ideal: PolyIdeal) -> bool:
    return ideal.contains(f)


def radical_augmented_ideal(f: Poly, ideal: PolyIdeal, fresh: str = "y") -> PolyIdeal:
    """The ideal <I, 1 - y*f> in the ring extended by a fresh variable."""
    name = fresh
    while name in ideal.ring.names:
        name += "_"
    big = ideal.ring.extend(name)
    one = Poly.const(big, big.spec.one())
    y = Poly.variable(big, big.nvars - 1)
    gens = [g.lift(big) for g in ideal.groebner()]
    gens.append(one - y * f.lift(big))
    return PolyIdeal(big, gens)


def radical_member(f: Poly, ideal: PolyIdeal) -> bool:
    """f in sqrt(I), decided by the extra-variable trick."""
    if f.ring != ideal.ring:
        raise PolyError("ring mismatch")
    if f.is_zero():
        return True
    if ideal.contains(f):
        return True
    return radical_augmented_ideal(f, ideal).is_trivial()


# ---------------------------------------------------------------------------
# polynomial matrices and minors
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Dense matrix of polynomials sharing one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise PolyError("entry count does not match shape")
        for e in entries:
            if e.ring != ring:
                raise PolyError("entry from a different ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    def eval_matrix(self, point):
        """Entrywise evaluation; returns a row-major list of FieldElements."""
        return [e.eval(point) for e in self.entries]

    def _det(self, row_set, col_set, cache):
        if len(row_set) == 1:
            return self.entry(row_set[0], col_set[0])
        key = (row_set, col_set)
        hit = cache.get(key)
        if hit is not None:
            return hit
        total = Poly.zero(self.ring)
        r0 = row_set[0]
        rest = row_set[1:]
        sign = 1
        for idx, c in enumerate(col_set):
            e = self.entry(r0, c)
            if e:
                sub = self._det(rest, col_set[:idx] + col_set[idx + 1 :], cache)
                if sub:
                    total = total + e * sub if sign > 0 else total - e * sub
            sign = -sign
        cache[key] = total
        return total

    def minor(self, row_set, col_set) -> Poly:
        return self._det(tuple(row_set), tuple(col_set), {})


def minors(m: PolyMatrix, r: int) -> list:
    """All r x r minors, in lexicographic (row subset, column subset) order."""
    if not 1 <= r <= min(m.rows, m.cols):
        raise PolyError(f"minor size {r} out of range")
    out = []
    cache = {}
    for row_set in itertools.combinations(range(m.rows), r):
        for col_set in itertools.combinations(range(m.cols), r):
            out.append(m._det(row_set, col_set, cache))
    return out


def eval_poly(f: Poly, point) -> FieldElement:
    return f.eval(point)
