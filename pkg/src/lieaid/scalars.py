"""Exact scalar arithmetic over Q, Q(i) and GF(p^k).

Everything in this package computes exactly: rationals are
`fractions.Fraction` (arbitrary-precision), Gaussian rationals are pairs
of fractions a + b*i, and finite-field elements are coefficient vectors
reduced modulo p and modulo a monic irreducible polynomial.  There is no
floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONAL = "rational"
GAUSSIAN = "gaussian_rational"
FINITE = "finite"


class ScalarError(ValueError):
    """Invalid field description or illegal scalar operation."""


# ---------------------------------------------------------------------------
# integer / GF(p)[x] helpers (coefficient lists are little-endian)
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pdivmod(f, g, p):
    # g must be nonzero; returns (quotient, remainder)
    f = list(f)
    _ptrim(f)
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        c = (f[-1] * inv) % p
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _ptrim(f)
    return q, f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        _, r = _pdivmod(f, g, p)
        f, g = g, r
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(c * inv) % p for c in f]
    return f


def _ppowmod(f, e, mod, p):
    # f^e modulo the polynomial `mod`
    result = [1]
    base = _pdivmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _poly_inverse(f, mod, p):
    # extended Euclid in GF(p)[x]; f must be nonzero mod `mod`
    r0, r1 = list(mod), _pdivmod(f, mod, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s2 = list(s0)
        qs = _pmul(q, s1, p)
        n = max(len(s2), len(qs))
        s2 += [0] * (n - len(s2))
        qs += [0] * (n - len(qs))
        s0, s1 = s1, _ptrim([(a - b) % p for a, b in zip(s2, qs)])
    if len(r0) != 1:
        raise ScalarError("element is not invertible")
    inv = pow(r0[0], p - 2, p)
    return [(c * inv) % p for c in s0]


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(coeffs, p) -> bool:
    """Irreducibility of a monic polynomial (little-endian coeffs) over GF(p).

    Degree <= 3 is decided by absence of roots; higher degrees use the
    x^(p^d) == x distinct-degree criterion.
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] % p != 1:
        return False
    if k == 1:
        return True
    if k <= 3:
        return all(
            sum(c * pow(a, e, p) for e, c in enumerate(coeffs)) % p != 0
            for a in range(p)
        )
    x = [0, 1]
    # x^(p^k) must equal x mod f
    if _ppowmod(x, p**k, coeffs, p) != _pdivmod(x, coeffs, p)[1]:
        return False
    for t in _prime_factors(k):
        h = _ppowmod(x, p ** (k // t), coeffs, p)
        diff = list(h)
        diff += [0] * (2 - len(diff))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(diff, coeffs, p)) != 1:
            return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest (by coefficient tuple) monic irreducible of degree k over GF(p)."""
    if k == 1:
        return (0, 1)
    for idx in range(p**k):
        lower, v = [], idx
        for _ in range(k):
            lower.append(v % p)
            v //= p
        cand = lower + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ScalarError(f"no irreducible polynomial of degree {k} over GF({p})")


# ---------------------------------------------------------------------------
# field specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Description of a base field: Q, Q(i) or GF(p^k)."""

    kind: str
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] = ()

    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec(RATIONAL)

    @staticmethod
    def gaussian() -> "FieldSpec":
        return FieldSpec(GAUSSIAN)

    @staticmethod
    def finite(p: int, k: int = 1, modulus=None) -> "FieldSpec":
        if not is_prime(p):
            raise ScalarError(f"{p} is not prime")
        if k < 1:
            raise ScalarError("extension degree must be >= 1")
        if k == 1:
            return FieldSpec(FINITE, p, 1, ())
        mod = tuple(int(c) % p for c in modulus) if modulus else default_modulus(p, k)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ScalarError("modulus must be monic of degree k")
        if not is_irreducible(list(mod), p):
            raise ScalarError("modulus is reducible over GF(p)")
        return FieldSpec(FINITE, p, k, mod)

    @property
    def size(self):
        """Number of elements, or None for infinite fields."""
        return self.p**self.k if self.kind == FINITE else None

    @property
    def char(self) -> int:
        return self.p if self.kind == FINITE else 0

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def from_int(self, n: int) -> "FieldElement":
        if self.kind == RATIONAL:
            return FieldElement(self, Fraction(n))
        if self.kind == GAUSSIAN:
            return FieldElement(self, (Fraction(n), Fraction(0)))
        if self.k == 1:
            return FieldElement(self, n % self.p)
        return FieldElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_fraction(self, fr: Fraction) -> "FieldElement":
        if self.kind == RATIONAL:
            return FieldElement(self, Fraction(fr))
        if self.kind == GAUSSIAN:
            return FieldElement(self, (Fraction(fr), Fraction(0)))
        num = fr.numerator % self.p
        den = pow(fr.denominator % self.p, self.p - 2, self.p)
        return self.from_int(num * den)

    def element_from_index(self, idx: int) -> "FieldElement":
        """idx-th element in enumeration order (finite fields only)."""
        if self.kind != FINITE:
            raise ScalarError("not enumerable: infinite field")
        if not 0 <= idx < self.size:
            raise ScalarError("element index out of range")
        if self.k == 1:
            return FieldElement(self, idx)
        coeffs, v = [], idx
        for _ in range(self.k):
            coeffs.append(v % self.p)
            v //= self.p
        return FieldElement(self, tuple(coeffs))

    def describe(self) -> str:
        if self.kind == RATIONAL:
            return "Q"
        if self.kind == GAUSSIAN:
            return "Q(i)"
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def to_json(self) -> dict:
        if self.kind == FINITE:
            d = {"kind": FINITE, "p": self.p, "k": self.k}
            if self.k > 1:
                d["modulus"] = list(self.modulus)
            return d
        return {"kind": self.kind}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        kind = d.get("kind")
        if kind == RATIONAL:
            return FieldSpec.rational()
        if kind == GAUSSIAN:
            return FieldSpec.gaussian()
        if kind == FINITE:
            return FieldSpec.finite(d["p"], d.get("k", 1), d.get("modulus"))
        raise ScalarError(f"unknown field kind {kind!r}")


def field_enumerate(spec: FieldSpec):
    """All elements of a finite field, 0 first, 1 second, deterministic order."""
    if spec.kind != FINITE:
        raise ScalarError("not enumerable: infinite field")
    for idx in range(spec.size):
        yield spec.element_from_index(idx)


def gaussian_unit_i(spec: FieldSpec) -> "FieldElement":
    """The imaginary unit i with i^2 = -1."""
    if spec.kind != GAUSSIAN:
        raise ScalarError("imaginary unit requires the Gaussian rationals")
    return FieldElement(spec, (Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Immutable exact scalar tied to a FieldSpec.

    Representations: Fraction (rational), pair of fractions (a, b) for
    a + b*i, int in [0, p) for GF(p), little-endian int tuple for GF(p^k).
    """

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val):
        self.spec = spec
        self.val = val

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise ScalarError("arithmetic between different fields is rejected")

    def is_zero(self) -> bool:
        k = self.spec.kind
        if k == RATIONAL:
            return self.val == 0
        if k == GAUSSIAN:
            return self.val[0] == 0 and self.val[1] == 0
        if self.spec.k == 1:
            return self.val == 0
        return all(c == 0 for c in self.val)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.spec, self.val))

    def __add__(self, other):
        self._check(other)
        s, k = self.spec, self.spec.kind
        if k == RATIONAL:
            return FieldElement(s, self.val + other.val)
        if k == GAUSSIAN:
            return FieldElement(
                s, (self.val[0] + other.val[0], self.val[1] + other.val[1])
            )
        if s.k == 1:
            return FieldElement(s, (self.val + other.val) % s.p)
        return FieldElement(
            s, tuple((a + b) % s.p for a, b in zip(self.val, other.val))
        )

    def __neg__(self):
        s, k = self.spec, self.spec.kind
        if k == RATIONAL:
            return FieldElement(s, -self.val)
        if k == GAUSSIAN:
            return FieldElement(s, (-self.val[0], -self.val[1]))
        if s.k == 1:
            return FieldElement(s, (-self.val) % s.p)
        return FieldElement(s, tuple((-c) % s.p for c in self.val))

    def __sub__(self, other):
        self._check(other)
        s, k = self.spec, self.spec.kind
        if k == RATIONAL:
            return FieldElement(s, self.val - other.val)
        if k == GAUSSIAN:
            return FieldElement(
                s, (self.val[0] - other.val[0], self.val[1] - other.val[1])
            )
        if s.k == 1:
            return FieldElement(s, (self.val - other.val) % s.p)
        return FieldElement(
            s, tuple((a - b) % s.p for a, b in zip(self.val, other.val))
        )

    def __mul__(self, other):
        self._check(other)
        s, k = self.spec, self.spec.kind
        if k == RATIONAL:
            return FieldElement(s, self.val * other.val)
        if k == GAUSSIAN:
            a, b = self.val
            c, d = other.val
            return FieldElement(s, (a * c - b * d, a * d + b * c))
        if s.k == 1:
            return FieldElement(s, (self.val * other.val) % s.p)
        prod = _pmul(list(self.val), list(other.val), s.p)
        red = _pdivmod(prod, list(s.modulus), s.p)[1]
        red += [0] * (s.k - len(red))
        return FieldElement(s, tuple(red))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        s, k = self.spec, self.spec.kind
        if k == RATIONAL:
            return FieldElement(s, 1 / self.val)
        if k == GAUSSIAN:
            a, b = self.val
            n = a * a + b * b
            return FieldElement(s, (a / n, -b / n))
        if s.k == 1:
            return FieldElement(s, pow(self.val, s.p - 2, s.p))
        inv = _poly_inverse(list(self.val), list(s.modulus), s.p)
        inv += [0] * (s.k - len(inv))
        return FieldElement(s, tuple(inv))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.spec.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        return f"<{render_scalar(self)} in {self.spec.describe()}>"

    def __str__(self):
        return render_scalar(self)


def embed(x: FieldElement, new_spec: FieldSpec) -> FieldElement:
    """Canonical embedding: identity, Q -> Q(i), or GF(p) -> GF(p^k)."""
    s = x.spec
    if s == new_spec:
        return x
    if s.kind == RATIONAL and new_spec.kind == GAUSSIAN:
        return FieldElement(new_spec, (x.val, Fraction(0)))
    if (
        s.kind == FINITE
        and new_spec.kind == FINITE
        and s.p == new_spec.p
        and s.k == 1
    ):
        return new_spec.from_int(x.val)
    raise ScalarError(
        f"no canonical embedding of {s.describe()} into {new_spec.describe()}"
    )


# ---------------------------------------------------------------------------
# textual scalar syntax: "a/b", "a/b+c/d*i", "[c0,c1,...]" or bare ints
# ---------------------------------------------------------------------------

def render_scalar(x: FieldElement) -> str:
    k = x.spec.kind
    if k == RATIONAL:
        return str(x.val)
    if k == GAUSSIAN:
        a, b = x.val
        if b == 0:
            return str(a)
        im = "i" if abs(b) == 1 else f"{abs(b)}*i"
        sign = "-" if b < 0 else "+"
        if a == 0:
            return im if b > 0 else f"-{im}"
        return f"{a}{sign}{im}"
    if x.spec.k == 1:
        return str(x.val)
    return "[" + ",".join(str(c) for c in x.val) + "]"


def _split_gaussian_terms(text):
    terms, start = [], 0
    for pos, ch in enumerate(text):
        if ch in "+-" and pos > start and text[pos - 1] not in "+-/*":
            terms.append(text[start:pos])
            start = pos
    terms.append(text[start:])
    return [t for t in terms if t]


def parse_scalar(spec: FieldSpec, text: str) -> FieldElement:
    """Parse the textual scalar syntax used in JSON files and CLI output."""
    text = str(text).replace(" ", "")
    if not text:
        raise ScalarError("empty scalar")
    k = spec.kind
    if k == RATIONAL:
        try:
            return FieldElement(spec, Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational {text!r}") from exc
    if k == GAUSSIAN:
        re_part, im_part = Fraction(0), Fraction(0)
        for term in _split_gaussian_terms(text):
            if term.endswith("i"):
                body = term[:-1].rstrip("*")
                if body in ("", "+"):
                    body = "1"
                elif body == "-":
                    body = "-1"
                im_part += Fraction(body)
            else:
                re_part += Fraction(term)
        return FieldElement(spec, (re_part, im_part))
    if text.startswith("["):
        if not text.endswith("]"):
            raise ScalarError(f"bad finite-field scalar {text!r}")
        parts = [p for p in text[1:-1].split(",") if p]
        coeffs = [int(p) % spec.p for p in parts]
        if len(coeffs) > spec.k:
            raise ScalarError("coefficient list longer than extension degree")
        coeffs += [0] * (spec.k - len(coeffs))
        if spec.k == 1:
            return FieldElement(spec, coeffs[0])
        return FieldElement(spec, tuple(coeffs))
    try:
        return spec.from_int(int(text))
    except ValueError as exc:
        raise ScalarError(f"bad finite-field scalar {text!r}") from exc
