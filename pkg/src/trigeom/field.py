"""Exact arithmetic in GF(p^k).

Elements are stored as coefficient vectors over GF(p), lowest degree first.
Internally every element also has an integer *code*: its rank in the
lexicographic order of coefficient vectors (low degree compared first).
Code order is the canonical element order used by the space builders, so
point coordinates sort the same way everywhere.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from functools import cached_property


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p), coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def is_irreducible(m: list[int], p: int) -> bool:
    """Trial division of the monic m by every monic polynomial of degree <= deg(m)/2."""
    k = len(m) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(list(m), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (low degree compared first)."""
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


@dataclass(frozen=True)
class Field:
    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(list(self.modulus), self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- code <-> coefficients -------------------------------------------

    def coeffs_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(reversed(out))

    def code_of(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        if len(coeffs) != self.k:
            raise ValueError("too many coefficients")
        code = 0
        for c in coeffs:
            code = code * self.p + (c % self.p)
        return code

    def _reduce(self, poly: list[int]) -> int:
        return self.code_of(poly_mod(poly, list(self.modulus), self.p))

    # -- tables, indexed by code -----------------------------------------

    @cached_property
    def one_code(self) -> int:
        return self.code_of([1])

    @cached_property
    def add_table(self) -> list[list[int]]:
        q, co = self.order, self.coeffs_of
        vecs = [co(c) for c in range(q)]
        return [[self.code_of([x + y for x, y in zip(vecs[a], vecs[b])]) for b in range(q)]
                for a in range(q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.code_of([-x for x in self.coeffs_of(c)]) for c in range(self.order)]

    @cached_property
    def _logs(self) -> tuple[list[int], list[int]]:
        q = self.order
        m = list(self.modulus)
        for g in range(q):
            if g == 0:
                continue
            gp = list(self.coeffs_of(g))
            exp, cur = [], [1]
            seen = set()
            for _ in range(q - 1):
                c = self._reduce(cur)
                if c in seen:
                    break
                seen.add(c)
                exp.append(c)
                cur = poly_mod(poly_mul(cur, gp, self.p), m, self.p)
            if len(exp) == q - 1:
                log = [-1] * q
                for i, c in enumerate(exp):
                    log[c] = i
                return exp, log
        raise AssertionError("multiplicative group not cyclic")  # unreachable

    @cached_property
    def primitive_code(self) -> int:
        """Smallest (in code order) generator of the multiplicative group."""
        exp, _ = self._logs
        return exp[1] if self.order > 2 else self.one_code

    @cached_property
    def mul_table(self) -> list[list[int]]:
        q = self.order
        exp, log = self._logs
        n = q - 1
        out = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la, row = log[a], out[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % n]
        return out

    @cached_property
    def inv_table(self) -> list[int]:
        exp, log = self._logs
        n = self.order - 1
        return [-1] + [exp[(-log[c]) % n] for c in range(1, self.order)]

    def pow_code(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return self.one_code if e == 0 else 0
        exp, log = self._logs
        return exp[(log[a] * e) % (self.order - 1)]

    def frobenius_code(self, a: int, i: int = 1) -> int:
        return self.pow_code(a, self.p ** i)

    # -- element API -------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.code_of([value]))
        return FieldElement(self, self.code_of(list(value)))

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.order)]

    @property
    def gen(self) -> FieldElement:
        """The residue class of x in GF(p)[x]/(modulus)."""
        return FieldElement(self, self._reduce([0, 1]))


@functools.cache
def field_make(p: int, k: int = 1) -> Field:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise ValueError("extension degree must be a positive integer")
    return Field(p, k, smallest_irreducible(p, k))


def gf(q: int) -> Field:
    p, k = prime_power(q)
    return field_make(p, k)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int = field(compare=True)

    @property
    def coeffs(self) -> tuple[int, ...]:
        # code is stored with the constant term most significant
        return self.field.coeffs_of(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field.code_of([other])
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_table[self.code][b])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_table[self.code])

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_table[self.code][self.field.neg_table[b]])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_table[self.code][b])

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if self.code == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return FieldElement(self.field, self.field.inv_table[self.code])

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.field, b).inv()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_code(self.code, e))

    def frobenius(self, i: int = 1) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius_code(self.code, i))

    def __bool__(self) -> bool:
        return self.code != 0

    def __lt__(self, other: FieldElement) -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
                terms.append(f"{c}" if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(reversed(terms)) or "0"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(a: FieldElement, i: int = 1) -> FieldElement:
    """a^(p^i); frobenius(a, k) == a."""
    return a.frobenius(i)
