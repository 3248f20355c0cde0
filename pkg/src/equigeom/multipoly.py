"""Sparse multivariate polynomials over a :class:`FieldDescriptor`.

A polynomial is a mapping from exponent tuples to nonzero raw coefficients.
Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import ArityMismatch, DescriptorMismatch, NonUnivariate, ZeroPolynomial
from .exactfield import RATIONAL, FieldDescriptor, FieldValue


@dataclass(frozen=True)
class ExponentOrder:
    """Monomial order: ``grlex`` or ``lex`` after permuting variables.

    ``perm[i]`` names the variable compared i-th; the default is the identity.
    """

    kind: str = "grlex"
    perm: tuple[int, ...] | None = None

    def key(self, nvars: int):
        perm = self.perm if self.perm is not None else tuple(range(nvars))
        if sorted(perm) != list(range(nvars)):
            raise ArityMismatch(f"order permutation {perm} is not a bijection on {nvars} variables")
        if self.kind == "grlex":
            if self.perm is None:
                return lambda e: (sum(e), e)
            return lambda e: (sum(e), tuple(e[i] for i in perm))
        if self.kind == "lex":
            if self.perm is None:
                return lambda e: e
            return lambda e: tuple(e[i] for i in perm)
        if self.kind == "elim":
            # eliminates perm[0]; graded lex on the remaining variables
            first, rest = perm[0], perm[1:]
            return lambda e: (e[first], sum(e) - e[first], tuple(e[i] for i in rest))
        raise ValueError(f"unknown monomial order {self.kind!r}")


GRLEX = ExponentOrder("grlex")
LEX = ExponentOrder("lex")


def _grlex_key(e):
    return (sum(e), e)


def default_names(nvars: int) -> tuple[str, ...]:
    if nvars <= 3:
        return ("x", "y", "z")[:nvars]
    return tuple(f"x{i}" for i in range(nvars))


class MultiPoly:
    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: FieldDescriptor, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            zero = field.zero
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ArityMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
                if c != zero:
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms) -> MultiPoly:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors --

    @classmethod
    def zero(cls, field, nvars) -> MultiPoly:
        return cls._raw(field, nvars, {})

    @classmethod
    def const(cls, field, nvars, c) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: field.coerce(c)})

    @classmethod
    def one(cls, field, nvars) -> MultiPoly:
        return cls.const(field, nvars, 1)

    @classmethod
    def var(cls, field, nvars, i: int) -> MultiPoly:
        if not 0 <= i < nvars:
            raise ArityMismatch(f"variable index {i} out of range for {nvars} variables")
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(field, nvars, {e: field.one})

    @classmethod
    def gens(cls, field, nvars) -> list[MultiPoly]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, field, nvars, exps, c=1) -> MultiPoly:
        return cls(field, nvars, {tuple(exps): field.coerce(c)})

    @classmethod
    def from_univariate(cls, field, coeffs: Sequence, nvars: int = 1, var: int = 0) -> MultiPoly:
        """Build sum(coeffs[i] * x_var^i); coefficients may be ints, Fractions or FieldValues."""
        terms = {}
        for i, c in enumerate(coeffs):
            e = tuple(i if j == var else 0 for j in range(nvars))
            terms[e] = field.coerce(c)
        return cls(field, nvars, terms)

    # -- inspection --

    @property
    def terms(self) -> dict:
        """Read-only view of the exponent -> raw coefficient map."""
        return self._terms

    def items(self, order: ExponentOrder | None = None):
        """(exponent, raw coefficient) pairs, largest first (graded lex by default)."""
        key = _grlex_key if order is None else order.key(self.nvars)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coeff(self, exps) -> FieldValue:
        return FieldValue(self.field, self._terms.get(tuple(exps), self.field.zero))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def constant_value(self) -> FieldValue:
        return self.coeff((0,) * self.nvars)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables_used(self) -> tuple[int, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(sorted(used))

    def is_univariate(self) -> bool:
        return len(self.variables_used()) <= 1

    def univariate_coeffs(self, var: int | None = None) -> list:
        """Raw coefficients (low to high) of a polynomial in one variable."""
        used = self.variables_used()
        if len(used) > 1:
            raise NonUnivariate(f"polynomial uses variables {used}")
        if var is None:
            var = used[0] if used else 0
        elif used and used != (var,):
            raise NonUnivariate(f"polynomial is not a polynomial in variable {var}")
        deg = self.degree_in(var)
        out = [self.field.zero] * (deg + 1)
        for e, c in self._terms.items():
            out[e[var]] = c
        return out

    def leading(self, order: ExponentOrder | None = None):
        """(exponent, raw coefficient) of the leading term."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = _grlex_key if order is None else order.key(self.nvars)
        e = max(self._terms, key=key)
        return e, self._terms[e]

    # -- arithmetic --

    def _check(self, other: MultiPoly):
        if self.field != other.field:
            raise DescriptorMismatch(f"{self.field} vs {other.field}")
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.field, self.nvars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = F.add(out.get(e, F.zero), c)
            if F.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly._raw(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        F = self.field
        return MultiPoly._raw(F, self.nvars, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out = {}
        zero = F.zero
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(out.get(e, zero), F.mul(c1, c2))
                if v == zero:
                    out.pop(e, None)
                else:
                    out[e] = v
        return MultiPoly._raw(F, self.nvars, out)

    def __rmul__(self, other) -> MultiPoly:
        return self.scale(other)

    def scale(self, c) -> MultiPoly:
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly._raw(F, self.nvars, {e: F.mul(c, v) for e, v in self._terms.items()})

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.one(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, order: ExponentOrder | None = None) -> MultiPoly:
        if not self._terms:
            return self
        _, lc = self.leading(order)
        return self.scale(FieldValue(self.field, self.field.inv(lc)))

    def mul_monomial(self, exps, c=None) -> MultiPoly:
        F = self.field
        c = F.one if c is None else c
        return MultiPoly._raw(F, self.nvars, {
            tuple(a + b for a, b in zip(e, exps)): F.mul(c, v) for e, v in self._terms.items()
        })

    # -- evaluation and substitution --

    def eval_raw(self, point: Sequence):
        """Evaluate at a tuple of raw field values."""
        F = self.field
        if len(point) != self.nvars:
            raise ArityMismatch(f"point of length {len(point)} for {self.nvars} variables")
        if F.kind == "prime":
            p = F.p
            total = 0
            for e, c in self._terms.items():
                t = c
                for x, k in zip(point, e):
                    if k:
                        t = t * pow(x, k, p) % p
                total += t
            return total % p
        total = F.zero
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = F.mul(t, F.pow(x, k))
            total = F.add(total, t)
        return total

    def __call__(self, *point) -> FieldValue:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        raw = tuple(self.field.coerce(x) for x in point)
        return FieldValue(self.field, self.eval_raw(raw))

    def compose(self, args: Sequence[MultiPoly]) -> MultiPoly:
        """Substitute args[i] for variable i."""
        if len(args) != self.nvars:
            raise ArityMismatch(f"{len(args)} arguments for {self.nvars} variables")
        if not args:
            # constants in zero variables: no arity information to carry
            raise ArityMismatch("compose needs at least one argument")
        F = self.field
        n = args[0].nvars
        for a in args:
            if a.field != F:
                raise DescriptorMismatch(f"{a.field} vs {F}")
            if a.nvars != n:
                raise ArityMismatch("composition arguments have different arities")
        powers: list[dict[int, MultiPoly]] = [dict() for _ in args]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = args[i] ** k
            return cache[k]

        result = MultiPoly.zero(F, n)
        for e, c in self._terms.items():
            term = MultiPoly._raw(F, n, {(0,) * n: c})
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def homogenise(self) -> MultiPoly:
        """Y^d * D(X/Y) with d the total degree; the new variable is last."""
        if not self._terms:
            raise ZeroPolynomial("cannot homogenise the zero polynomial")
        d = self.total_degree()
        return MultiPoly._raw(self.field, self.nvars + 1, {
            e + (d - sum(e),): c for e, c in self._terms.items()
        })

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> MultiPoly:
        """Re-express in ``nvars`` variables; variable i goes to positions[i] (default: i)."""
        if positions is None:
            positions = range(self.nvars)
        positions = list(positions)
        out = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[positions[i]] += k
            out[tuple(new)] = c
        return MultiPoly._raw(self.field, nvars, out)

    def map_coefficients(self, field: FieldDescriptor, fn) -> MultiPoly:
        return MultiPoly(field, self.nvars, {e: fn(c) for e, c in self._terms.items()})

    # -- comparison and printing --

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, FieldValue)):
            try:
                return self == MultiPoly.const(self.field, self.nvars, other)
            except DescriptorMismatch:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = default_names(self.nvars) if names is None else names
        if not self._terms:
            return "0"
        F = self.field
        out = []
        for e, c in self.items():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            negative = False
            if F.kind == RATIONAL and c < 0:
                negative, c = True, -c
            if not mono:
                body = F.fmt(c)
            elif c == F.one:
                body = mono
            else:
                cs = F.fmt(c)
                body = f"{cs}*{mono}" if F.is_atomic(c) else f"({cs})*{mono}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()!r} over {self.field})"


# -- module level operations -----------------------------------------------


def poly_arith(op: str, f: MultiPoly, g=None) -> MultiPoly:
    """op in add, sub, mul, scale (g a scalar), power (g an int)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    if op == "power":
        return f ** g
    raise ValueError(f"unknown polynomial operation {op!r}")


def evaluate(f: MultiPoly, point: Sequence) -> FieldValue:
    return f(tuple(point))


def compose(f: MultiPoly, args: Sequence[MultiPoly]) -> MultiPoly:
    return f.compose(args)


def homogenise(D: MultiPoly) -> MultiPoly:
    return D.homogenise()


def divide(f: MultiPoly, divisors: Sequence[MultiPoly], order: ExponentOrder = GRLEX):
    """Multivariate division: returns (quotients, remainder)."""
    F = f.field
    key = order.key(f.nvars)
    leads = [g.leading(order) for g in divisors]
    quotients = [dict() for _ in divisors]
    p = dict(f.terms)
    rem = {}
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for qi, (g, (glm, glc)) in enumerate(zip(divisors, leads)):
            if all(a >= b for a, b in zip(lm, glm)):
                q = F.div(c, glc)
                shift = tuple(a - b for a, b in zip(lm, glm))
                quotients[qi][shift] = F.add(quotients[qi].get(shift, F.zero), q)
                for e, a in g.terms.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = F.sub(p.get(e2, F.zero), F.mul(q, a))
                    if F.is_zero(v):
                        p.pop(e2, None)
                    else:
                        p[e2] = v
                break
        else:
            rem[lm] = c
            del p[lm]
    n = f.nvars
    return [MultiPoly(F, n, q) for q in quotients], MultiPoly._raw(F, n, rem)


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if g.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    (q,), r = divide(f, [g])
    if not r.is_zero():
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def bareiss_determinant(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square matrix with polynomial entries."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    field, nvars = M[0][0].field, M[0][0].nvars
    sign = 1
    prev = MultiPoly.one(field, nvars)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(field, nvars)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_divide(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    """Sylvester matrix of two univariate polynomials given by coefficient lists (high to low)."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    zero = MultiPoly.zero(f[0].field, f[0].nvars)
    rows = []
    for i in range(dg):
        rows.append([zero] * i + list(f) + [zero] * (size - df - 1 - i))
    for i in range(df):
        rows.append([zero] * i + list(g) + [zero] * (size - dg - 1 - i))
    return rows


def resultant_linear(m: MultiPoly) -> MultiPoly:
    """Res_T(m(T), X - T*Y) as a bivariate form in (X, Y).

    Equals lc(m) * prod(X - beta*Y) over the roots beta of m, so its zeros with
    Y != 0 are exactly the pairs (a, b) with a/b a root of m.
    """
    if m.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    coeffs = m.univariate_coeffs()
    d = len(coeffs) - 1
    if d < 1:
        raise NonUnivariate("resultant_linear needs a polynomial of degree >= 1")
    F = m.field
    X, Y = MultiPoly.gens(F, 2)
    high_to_low = [MultiPoly._raw(F, 2, {(0, 0): c} if not F.is_zero(c) else {}) for c in reversed(coeffs)]
    # X - T*Y as a polynomial in T: coefficients (-Y, X)
    return bareiss_determinant(sylvester_matrix(high_to_low, [-Y, X]))


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    return tuple(small + large[::-1])


def _rational_roots_of_coeffs(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if len(ints) <= 1:
        return roots
    low, high = ints[0], ints[-1]
    found = set()
    for q in divisors(high):
        for p in divisors(low):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in found:
                    continue
                # q^d * m(p/q), Horner in integers
                num, den_ = cand.numerator, cand.denominator
                acc, scale = 0, 1
                for c in reversed(ints):
                    acc = acc * num + c * scale
                    scale *= den_
                if acc == 0:
                    found.add(cand)
    roots.extend(found)
    return sorted(set(roots))


def rational_roots(m: MultiPoly) -> list[FieldValue]:
    """All roots in the base field of a univariate polynomial.

    QQ: rational-root test on the cleared-denominator integer polynomial.
    Finite fields: enumeration.
    """
    if m.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    coeffs = m.univariate_coeffs()
    F = m.field
    if F.kind == RATIONAL:
        return [FieldValue(F, r) for r in _rational_roots_of_coeffs(list(coeffs))]
    out = []
    for a in F.raw_elements:
        acc = F.zero
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, a), c)
        if F.is_zero(acc):
            out.append(FieldValue(F, a))
    return out


def interpret_point(field: FieldDescriptor, point: Iterable) -> tuple:
    return tuple(field.coerce(x) for x in point)
