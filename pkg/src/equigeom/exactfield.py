"""Exact arithmetic over GF(p), GF(p^m) = GF(p)[t]/(q(t)) and QQ.

Elements are carried in a *raw* form that the owning :class:`FieldDescriptor`
knows how to combine:

* prime fields: an ``int`` in ``range(p)``
* extension fields: a ``tuple`` of ``m`` ints (coefficients of 1, t, ..., t^(m-1))
* rationals: a :class:`fractions.Fraction`

Polynomial code works on raw values for speed; :class:`FieldValue` wraps a raw
value with its descriptor for the public, operator-overloaded API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import DescriptorMismatch, DivisionByZero, InfiniteField, InvalidField

PRIME = "prime"
EXTENSION = "extension"
RATIONAL = "rational"

MAX_EXTENSION_DEGREE = 8
MAX_FIELD_ORDER = 2 ** 20


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


# -- univariate helpers over GF(p); lists are low-to-high, no trailing zeros --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        q = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible_mod_p(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for cand in _monic_polys(d, p):
            if not _upoly_mod(list(modulus), cand, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m in canonical order (low coefficients as base-p digits)."""
    for index in range(p ** m):
        low = [(index // p ** i) % p for i in range(m)]
        cand = tuple(low) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise InvalidField(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldDescriptor:
    """Immutable description of the base field; also the arithmetic engine for raw values."""

    kind: str
    p: int = 0
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == RATIONAL:
            return
        if not is_prime(self.p):
            raise InvalidField(f"{self.p} is not prime")
        if self.kind == PRIME:
            return
        if self.kind != EXTENSION:
            raise InvalidField(f"unknown field kind {self.kind!r}")
        mod = tuple(c % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        m = len(mod) - 1
        if m < 2 or mod[-1] != 1:
            raise InvalidField("extension modulus must be monic of degree >= 2")
        if m > MAX_EXTENSION_DEGREE:
            raise InvalidField(f"extension degree {m} exceeds the cap {MAX_EXTENSION_DEGREE}")
        if self.p ** m > MAX_FIELD_ORDER:
            raise InvalidField(f"field order {self.p}^{m} exceeds the cap 2^20")
        if not is_irreducible_mod_p(mod, self.p):
            raise InvalidField(f"modulus {format_upoly(mod)} is reducible over GF({self.p})")

    # -- descriptive properties --

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONAL

    @property
    def degree(self) -> int:
        """Degree over the prime field (1 for GF(p) and QQ)."""
        return len(self.modulus) - 1 if self.kind == EXTENSION else 1

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONAL else self.p

    @property
    def order(self) -> int:
        if self.kind == RATIONAL:
            raise InfiniteField("QQ has no finite order")
        return self.p ** self.degree

    def __str__(self) -> str:
        if self.kind == RATIONAL:
            return "QQ"
        if self.kind == PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}; {format_upoly(self.modulus)})"

    def __repr__(self) -> str:
        return f"FieldDescriptor({self})"

    # -- raw arithmetic --

    @cached_property
    def zero(self):
        if self.kind == PRIME:
            return 0
        if self.kind == EXTENSION:
            return (0,) * self.degree
        return Fraction(0)

    @cached_property
    def one(self):
        if self.kind == PRIME:
            return 1
        if self.kind == EXTENSION:
            return (1,) + (0,) * (self.degree - 1)
        return Fraction(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.p
        if self.kind == EXTENSION:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return a + b

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.p
        if self.kind == EXTENSION:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return a - b

    def neg(self, a):
        if self.kind == PRIME:
            return -a % self.p
        if self.kind == EXTENSION:
            p = self.p
            return tuple(-x % p for x in a)
        return -a

    @cached_property
    def _reduction_rows(self) -> list[tuple[int, ...]]:
        # t^(m+j) expressed in the basis 1..t^(m-1), for j = 0..m-2
        m, p = self.degree, self.p
        row = tuple(-c % p for c in self.modulus[:m])
        rows = [row]
        for _ in range(m - 2):
            prev = rows[-1]
            top = prev[-1]
            shifted = (0,) + prev[:-1]
            rows.append(tuple((s + top * r) % p for s, r in zip(shifted, row)))
        return rows

    def mul(self, a, b):
        if self.kind == PRIME:
            return a * b % self.p
        if self.kind == EXTENSION:
            m, p = self.degree, self.p
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            out = prod[:m]
            for j, c in enumerate(prod[m:]):
                if c:
                    for i, r in enumerate(self._reduction_rows[j]):
                        out[i] += c * r
            return tuple(c % p for c in out)
        return a * b

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.kind == PRIME:
            return pow(a, e, self.p)
        if self.kind == RATIONAL:
            return a ** e
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        if self.kind == RATIONAL:
            return 1 / a
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        if self.kind == PRIME:
            return n % self.p
        if self.kind == EXTENSION:
            return (n % self.p,) + (0,) * (self.degree - 1)
        return Fraction(n)

    def coerce(self, x):
        """Raw value from an int, Fraction, FieldValue, tuple (extension) or raw value."""
        if isinstance(x, FieldValue):
            if x.field != self:
                raise DescriptorMismatch(f"{x.field} vs {self}")
            return x.raw
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.kind == RATIONAL:
                return x
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, tuple) and self.kind == EXTENSION:
            if len(x) != self.degree:
                raise DescriptorMismatch(f"payload of length {len(x)} for {self}")
            return tuple(int(c) % self.p for c in x)
        raise DescriptorMismatch(f"cannot interpret {x!r} in {self}")

    def __call__(self, x) -> FieldValue:
        return FieldValue(self, self.coerce(x))

    @property
    def gen(self) -> FieldValue:
        """The class of t in GF(p)[t]/(q)."""
        if self.kind != EXTENSION:
            raise InvalidField(f"{self} has no extension generator")
        return FieldValue(self, (0, 1) + (0,) * (self.degree - 2))

    def frobenius_raw(self, a):
        if self.kind == RATIONAL:
            raise InfiniteField("Frobenius is defined for finite fields only")
        if self.kind == PRIME:
            return a
        return self.pow(a, self.p)

    # -- enumeration --

    def index(self, a) -> int:
        """Position of a raw value in the canonical enumeration."""
        if self.kind == PRIME:
            return a
        if self.kind == EXTENSION:
            return sum(c * self.p ** i for i, c in enumerate(a))
        raise InfiniteField("QQ is not enumerable")

    def from_index(self, i: int):
        if self.kind == PRIME:
            return i
        if self.kind == EXTENSION:
            return tuple((i // self.p ** j) % self.p for j in range(self.degree))
        raise InfiniteField("QQ is not enumerable")

    @cached_property
    def raw_elements(self) -> tuple:
        if self.kind == RATIONAL:
            raise InfiniteField("QQ cannot be enumerated")
        return tuple(self.from_index(i) for i in range(self.order))

    def elements(self) -> Iterator[FieldValue]:
        for a in self.raw_elements:
            yield FieldValue(self, a)

    # -- printing --

    def fmt(self, a) -> str:
        if self.kind == PRIME:
            return str(a)
        if self.kind == RATIONAL:
            return str(a)
        return format_upoly(a, "t")

    def is_atomic(self, a) -> bool:
        """True when ``fmt(a)`` can be juxtaposed without parentheses."""
        if self.kind == EXTENSION:
            return sum(1 for c in a if c) <= 1
        return True


def format_upoly(coeffs, var: str = "t") -> str:
    """Print a low-to-high integer coefficient sequence as a polynomial in ``var``."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            mono = str(c)
        else:
            power = var if i == 1 else f"{var}^{i}"
            mono = power if c == 1 else f"{c}*{power}"
        parts.append(mono)
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FieldValue:
    """An element of a field, tied to its descriptor."""

    field: FieldDescriptor
    raw: object

    def _other(self, y):
        if isinstance(y, FieldValue):
            if y.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {y.field}")
            return y.raw
        return self.field.coerce(y)

    def __add__(self, y):
        return FieldValue(self.field, self.field.add(self.raw, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return FieldValue(self.field, self.field.sub(self.raw, self._other(y)))

    def __rsub__(self, y):
        return FieldValue(self.field, self.field.sub(self._other(y), self.raw))

    def __mul__(self, y):
        return FieldValue(self.field, self.field.mul(self.raw, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return FieldValue(self.field, self.field.div(self.raw, self._other(y)))

    def __rtruediv__(self, y):
        return FieldValue(self.field, self.field.div(self._other(y), self.raw))

    def __neg__(self):
        return FieldValue(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return FieldValue(self.field, self.field.pow(self.raw, e))

    def inv(self) -> FieldValue:
        return FieldValue(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, y) -> bool:
        if isinstance(y, FieldValue):
            return self.field == y.field and self.raw == y.raw
        try:
            return self.raw == self.field.coerce(y)
        except (DescriptorMismatch, DivisionByZero):
            return False

    def __hash__(self) -> int:
        return hash((self.field, self.raw))

    def __str__(self) -> str:
        return self.field.fmt(self.raw)

    def __repr__(self) -> str:
        return f"{self.field.fmt(self.raw)} in {self.field}"


def GF(p: int, m: int = 1, modulus=None) -> FieldDescriptor:
    """GF(p) or GF(p^m); without an explicit modulus the smallest irreducible is used."""
    if m == 1 and modulus is None:
        return FieldDescriptor(PRIME, p)
    if not is_prime(p):
        raise InvalidField(f"{p} is not prime")
    if modulus is None:
        if m > MAX_EXTENSION_DEGREE or p ** m > MAX_FIELD_ORDER:
            raise InvalidField(f"GF({p}^{m}) exceeds the desk-scale caps")
        modulus = smallest_irreducible(p, m)
    modulus = tuple(modulus)
    if len(modulus) - 1 != m and m != 1:
        raise InvalidField(f"modulus degree {len(modulus) - 1} does not match m = {m}")
    return FieldDescriptor(EXTENSION, p, modulus)


QQ = FieldDescriptor(RATIONAL)


def field_arith(op: str, x: FieldValue, y: FieldValue | None = None) -> FieldValue:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown field operation {op!r}")


def enumerate_field(d: FieldDescriptor) -> Iterator[FieldValue]:
    return d.elements()


def frobenius(x: FieldValue) -> FieldValue:
    """x -> x^p, a generator of Gal(GF(p^m)/GF(p))."""
    return FieldValue(x.field, x.field.frobenius_raw(x.raw))
