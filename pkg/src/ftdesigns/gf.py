"""Exact arithmetic in GF(p) and GF(p^d).

Elements are dense coefficient vectors over GF(p) (constant term first),
reduced modulo a monic irreducible polynomial stored on the field.

    >>> F = field_create(3, 4, [2, 1, 0, 0, 1])     # x^4 + x - 1
    >>> w = F.omega
    >>> (w ** 4).coeffs
    (1, 2, 0, 0)
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    BadDegree,
    FieldMismatch,
    NotPrime,
    ReduciblePolynomial,
    ZeroArgument,
    ZeroInverse,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p): lists of ints, constant term first -------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = _trim(x % p for x in a)
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    return a


def poly_powmod(base, e, m, p):
    result = [1]
    base = poly_mod(base, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    poly = _trim(poly)
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if poly_sub(poly_powmod(x, p ** d, poly, p), x, p):
        return False
    for q in prime_factors(d):
        h = poly_sub(poly_powmod(x, p ** (d // q), poly, p), x, p)
        if len(poly_gcd(poly, h, p)) > 1:
            return False
    return True


def default_polynomial(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d (constant term first)."""
    for low in itertools.product(range(p), repeat=d):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- field ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^d) presented as GF(p)[x]/(poly), with a designated primitive element."""

    p: int
    d: int
    poly: tuple[int, ...]
    omega_index: int = field(default=-1)

    @property
    def order(self) -> int:
        return self.p ** self.d

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.p, self.d, self.poly)

    def __repr__(self):
        return f"GF({self.p}^{self.d}, poly={list(self.poly)})"

    # elements
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            if self.d == 1:
                return FieldElement(self, (value % self.p,))
            return self.from_index(value)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.d:
            raise FieldMismatch(f"need {self.d} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def from_index(self, index: int) -> "FieldElement":
        """Element whose coefficient vector has lexicographic rank ``index``."""
        coeffs = []
        for _ in range(self.d):
            coeffs.append(index % self.p)
            index //= self.p
        return FieldElement(self, tuple(reversed(coeffs)))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.d)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.d - 1))

    @property
    def gen(self) -> "FieldElement":
        """The class of x (the polynomial basis generator)."""
        if self.d == 1:
            return self(-self.poly[0])
        return FieldElement(self, (0, 1) + (0,) * (self.d - 2))

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)

    @property
    def omega(self) -> "FieldElement":
        return self.from_index(self.omega_index)

    def multiplicative_order(self, a: "FieldElement") -> int:
        if a.is_zero():
            raise ZeroArgument("0 has no multiplicative order")
        n = self.order - 1
        o = n
        for q in prime_factors(n):
            while o % q == 0 and (a ** (o // q)).is_one():
                o //= q
        return o

    @cached_property
    def _log_table(self) -> dict[tuple, int]:
        table = {}
        x = self.one
        w = self.omega
        for e in range(self.order - 1):
            table[x.coeffs] = e
            x = x * w
        return table

    def dlog(self, a: "FieldElement") -> int:
        a = self(a)
        if a.is_zero():
            raise ZeroArgument("discrete log of 0")
        return self._log_table[a.coeffs]

    def pow_omega(self, e: int) -> "FieldElement":
        return self.omega ** e

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "poly": list(self.poly)}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return field_create(obj["p"], obj["d"], obj.get("poly"))


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"

    @property
    def index(self) -> int:
        i = 0
        for c in self.coeffs:
            i = i * self.field.p + c
        return i

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def _other(self, b) -> "FieldElement":
        if isinstance(b, int):
            return self.field(b) if self.field.d == 1 else self.field.one * b
        if not isinstance(b, FieldElement):
            return NotImplemented
        if b.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {b.field!r}")
        return b

    def __add__(self, b):
        b = self._other(b)
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-x % p for x in self.coeffs))

    def __sub__(self, b):
        return self + (-self._other(b))

    def __rsub__(self, b):
        return self._other(b) - self

    def __mul__(self, b):
        F = self.field
        if isinstance(b, int) and not isinstance(b, bool):
            return FieldElement(F, tuple(x * b % F.p for x in self.coeffs))
        b = self._other(b)
        prod = poly_mod(poly_mul(list(self.coeffs), list(b.coeffs), F.p), list(F.poly), F.p)
        prod += [0] * (F.d - len(prod))
        return FieldElement(F, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroInverse("0 has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, b):
        return self * self._other(b).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, i: int = 1) -> "FieldElement":
        return frobenius(self, i)


def field_create(p: int, d: int = 1, poly=None, omega=None) -> FieldSpec:
    """Build GF(p^d).

    ``poly`` is a monic coefficient list, constant term first; when omitted the
    lexicographically smallest irreducible is used.  ``omega`` (coefficients or
    index) overrides the designated primitive element.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d < 1:
        raise BadDegree(f"degree must be >= 1, got {d}")
    if poly is None:
        poly = default_polynomial(p, d)
    else:
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != d + 1 or poly[-1] != 1:
            raise BadDegree(f"poly must be monic of degree {d}: {list(poly)}")
        if not is_irreducible(poly, p):
            raise ReduciblePolynomial(f"{list(poly)} is reducible over GF({p})")
    F = FieldSpec(p, d, tuple(poly))
    if omega is not None:
        w = F(omega)
        if w.is_zero() or F.multiplicative_order(w) != F.order - 1:
            raise ValueError(f"{w!r} is not primitive")
        idx = w.index
    else:
        idx = _canonical_omega(F)
    object.__setattr__(F, "omega_index", idx)
    return F


def _canonical_omega(F: FieldSpec) -> int:
    if F.order == 2:
        return 1
    # the root of the stored polynomial when it is primitive, so explicit
    # presentations such as "omega is a root of X^4+X-1" are honoured
    if F.d > 1 and F.multiplicative_order(F.gen) == F.order - 1:
        return F.gen.index
    for i in range(1, F.order):
        if F.multiplicative_order(F.from_index(i)) == F.order - 1:
            return i
    raise AssertionError("no primitive element")  # unreachable


def primitive_elements(F: FieldSpec) -> list[FieldElement]:
    return [a for a in F.elements() if not a.is_zero() and F.multiplicative_order(a) == F.order - 1]


def f_arith(op: str, a: FieldElement, b=None) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElement, i: int = 1) -> FieldElement:
    """a ** (p ** i)."""
    F = a.field
    return a ** (F.p ** (i % F.d))


def subfield_elements(F: FieldSpec, e: int) -> list[FieldElement]:
    """Elements of the subfield GF(p^e) of F, zero first then powers of its generator."""
    if F.d % e:
        raise BadDegree(f"{e} does not divide {F.d}")
    step = (F.order - 1) // (F.p ** e - 1)
    g = F.omega ** step
    out = [F.zero]
    x = F.one
    for _ in range(F.p ** e - 1):
        out.append(x)
        x = x * g
    return out
