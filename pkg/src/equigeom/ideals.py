"""Finitely generated ideals of k[x1..xn] with exact decision engines.

* Buchberger's algorithm (sugar selection, product and chain criteria) gives
  reduced Groebner bases, normal forms and, on request, cofactors with respect
  to the original generators.
* The Macaulay matrix oracle decides degree-bounded membership by linear
  algebra only; it shares no code with the Groebner engine beyond field
  arithmetic.
* Vanishing ideals of finite point sets come from the Buchberger-Moeller
  algorithm, which returns the reduced basis directly.
"""

from __future__ import annotations

import heapq
import itertools
import threading
from typing import Sequence

from .errors import ArityMismatch, DescriptorMismatch, ResourceLimit
from .exactfield import FieldDescriptor
from .linalg import RowSpace
from .multipoly import GRLEX, ExponentOrder, MultiPoly, default_names

DEFAULT_BUDGET = 10 ** 6


class Budget:
    """Counts reduction steps and raises ResourceLimit past the limit."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.steps = 0

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.steps > self.limit:
            raise ResourceLimit(f"step budget of {self.limit} reduction steps exhausted")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("terms", "lm", "sugar", "rep")

    def __init__(self, terms, lm, sugar, rep):
        self.terms = terms
        self.lm = lm
        self.sugar = sugar
        self.rep = rep


def _reduce(F, terms: dict, basis: list[_Elem], key, budget: Budget, quotients: list | None = None, full=True):
    """Reduce ``terms`` by the (monic) basis; optionally record quotients per basis element."""
    p = dict(terms)
    rem = {}
    zero = F.zero
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for k, g in enumerate(basis):
            if _divides(g.lm, lm):
                shift = _sub(lm, g.lm)
                for e, a in g.terms.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = F.sub(p.get(e2, zero), F.mul(c, a))
                    if v == zero:
                        p.pop(e2, None)
                    else:
                        p[e2] = v
                if quotients is not None:
                    q = quotients[k]
                    v = F.add(q.get(shift, zero), c)
                    if v == zero:
                        q.pop(shift, None)
                    else:
                        q[shift] = v
                budget.tick()
                break
        else:
            if not full:
                rem.update(p)
                break
            rem[lm] = c
            del p[lm]
    return rem


def _combine_rep(F, nvars, rep, quotients, basis):
    """rep - sum(q_k * basis[k].rep)."""
    out = list(rep)
    for q, g in zip(quotients, basis):
        if not q:
            continue
        qp = MultiPoly(F, nvars, q)
        out = [a - qp * b for a, b in zip(out, g.rep)]
    return out


def buchberger(generators: Sequence[MultiPoly], order: ExponentOrder = GRLEX,
               budget: Budget | None = None, track: bool = False):
    """Reduced Groebner basis (ascending leading monomials).

    With ``track`` also returns, for every basis element, its cofactors with
    respect to ``generators``.
    """
    if not generators:
        raise ArityMismatch("no generators")
    F, n = generators[0].field, generators[0].nvars
    key = order.key(n)
    budget = budget or Budget()
    ngens = len(generators)
    basis: list[_Elem] = []
    pairs: set[tuple[int, int]] = set()

    def unit(i):
        return [MultiPoly.one(F, n) if j == i else MultiPoly.zero(F, n) for j in range(ngens)]

    def add(terms, sugar, rep):
        lm = max(terms, key=key)
        inv = F.inv(terms[lm])
        terms = {e: F.mul(inv, c) for e, c in terms.items()}
        if rep is not None:
            rep = [r.mul_monomial((0,) * n, inv) for r in rep]
        idx = len(basis)
        basis.append(_Elem(terms, lm, sugar, rep))
        for j in range(idx):
            pairs.add((j, idx))

    for i, g in enumerate(generators):
        if g.field != F or g.nvars != n:
            raise DescriptorMismatch("generators live in different rings")
        if g.terms:
            add(dict(g.terms), g.total_degree(), unit(i) if track else None)

    def pair_key(ij):
        i, j = ij
        gi, gj = basis[i], basis[j]
        l = _lcm(gi.lm, gj.lm)
        d = sum(l)
        sugar = max(gi.sugar + d - sum(gi.lm), gj.sugar + d - sum(gj.lm))
        return (sugar, key(l), i, j)

    while pairs:
        best = min(pairs, key=pair_key)
        pairs.discard(best)
        i, j = best
        gi, gj = basis[i], basis[j]
        l = _lcm(gi.lm, gj.lm)
        if all(a == 0 or b == 0 for a, b in zip(gi.lm, gj.lm)):
            continue  # product criterion
        chain = False
        for k, gk in enumerate(basis):
            if k in (i, j) or not _divides(gk.lm, l):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        si, sj = _sub(l, gi.lm), _sub(l, gj.lm)
        spoly = {}
        for e, c in gi.terms.items():
            spoly[tuple(x + y for x, y in zip(e, si))] = c
        for e, c in gj.terms.items():
            e2 = tuple(x + y for x, y in zip(e, sj))
            v = F.sub(spoly.get(e2, F.zero), c)
            if F.is_zero(v):
                spoly.pop(e2, None)
            else:
                spoly[e2] = v
        budget.tick()
        if not spoly:
            continue
        sugar = pair_key(best)[0]
        quotients = [dict() for _ in basis] if track else None
        rem = _reduce(F, spoly, basis, key, budget, quotients)
        if rem:
            rep = None
            if track:
                srep = [a.mul_monomial(si) - b.mul_monomial(sj) for a, b in zip(gi.rep, gj.rep)]
                rep = _combine_rep(F, n, srep, quotients, basis)
            add(rem, sugar, rep)

    # minimalise
    keep = []
    for idx, g in enumerate(basis):
        dominated = False
        for jdx, h in enumerate(basis):
            if jdx == idx:
                continue
            if _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    keep.sort(key=lambda g: key(g.lm))
    # interreduce tails
    reduced = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        quotients = [dict() for _ in others] if track else None
        tail = dict(g.terms)
        lc = tail.pop(g.lm)
        rem = _reduce(F, tail, others, key, budget, quotients)
        rem[g.lm] = lc
        rep = _combine_rep(F, n, g.rep, quotients, others) if track else None
        reduced.append(_Elem(rem, g.lm, g.sugar, rep))
    polys = [MultiPoly(F, n, g.terms) for g in reduced]
    if track:
        return polys, [g.rep for g in reduced]
    return polys


def _monomials_up_to(nvars: int, d: int):
    """All exponent tuples of total degree <= d."""
    out = []
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


class IdealHandle:
    """An ideal of k[x1..xn] given by generators, with write-once engine caches."""

    def __init__(self, field: FieldDescriptor, nvars: int, generators: Sequence[MultiPoly],
                 names: Sequence[str] | None = None, budget: int = DEFAULT_BUDGET):
        gens = tuple(generators)
        for g in gens:
            if g.field != field:
                raise DescriptorMismatch(f"generator over {g.field}, ideal over {field}")
            if g.nvars != nvars:
                raise ArityMismatch(f"generator in {g.nvars} variables, ideal in {nvars}")
        self.field = field
        self.nvars = nvars
        self.generators = gens if gens else (MultiPoly.zero(field, nvars),)
        self.names = tuple(names) if names is not None else default_names(nvars)
        self.budget = budget
        self._lock = threading.Lock()
        self._gb: dict[ExponentOrder, list[MultiPoly]] = {}
        self._lift: tuple | None = None
        self.point_set: tuple | None = None

    @classmethod
    def of(cls, *generators: MultiPoly, names=None) -> IdealHandle:
        return cls(generators[0].field, generators[0].nvars, generators, names)

    def __repr__(self) -> str:
        gens = ", ".join(g.to_str(self.names) for g in self.generators)
        return f"IdealHandle(({gens}) over {self.field})"

    def __str__(self) -> str:
        return "(" + ", ".join(g.to_str(self.names) for g in self.generators) + ")"

    # -- Groebner engine --

    def _basis(self, order: ExponentOrder = GRLEX) -> list[MultiPoly]:
        with self._lock:
            if order not in self._gb:
                gens = [g for g in self.generators if not g.is_zero()]
                self._gb[order] = buchberger(gens, order, Budget(self.budget)) if gens else []
            return self._gb[order]

    def groebner(self, order: ExponentOrder = GRLEX) -> list[MultiPoly]:
        """Reduced Groebner basis; the zero ideal reports [0]."""
        return list(self._basis(order)) or [MultiPoly.zero(self.field, self.nvars)]

    def _lift_data(self):
        with self._lock:
            if self._lift is None:
                gens = list(self.generators)
                nonzero = [i for i, g in enumerate(gens) if not g.is_zero()]
                if not nonzero:
                    self._lift = ([], [])
                else:
                    basis, reps = buchberger([gens[i] for i in nonzero], GRLEX, Budget(self.budget), track=True)
                    full = []
                    zero = MultiPoly.zero(self.field, self.nvars)
                    for rep in reps:
                        row = [zero] * len(gens)
                        for i, r in zip(nonzero, rep):
                            row[i] = r
                        full.append(row)
                    self._lift = (basis, full)
            return self._lift

    def normal_form(self, f: MultiPoly, order: ExponentOrder = GRLEX) -> MultiPoly:
        self._check(f)
        basis = self._basis(order)
        if not basis:
            return f
        key = order.key(self.nvars)
        elems = [_Elem(g.terms, g.leading(order)[0], 0, None) for g in basis]
        rem = _reduce(self.field, f.terms, elems, key, Budget(self.budget))
        return MultiPoly(self.field, self.nvars, rem)

    def member(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f: MultiPoly) -> bool:
        return self.member(f)

    def lift(self, f: MultiPoly) -> list[MultiPoly] | None:
        """Cofactors c with f = sum(c_i * generators_i), or None when f is not a member."""
        self._check(f)
        basis, reps = self._lift_data()
        zero = MultiPoly.zero(self.field, self.nvars)
        if not basis:
            return [zero] * len(self.generators) if f.is_zero() else None
        key = GRLEX.key(self.nvars)
        elems = [_Elem(g.terms, g.leading()[0], 0, None) for g in basis]
        quotients = [dict() for _ in elems]
        rem = _reduce(self.field, f.terms, elems, key, Budget(self.budget), quotients)
        if rem:
            return None
        out = [zero] * len(self.generators)
        for q, rep in zip(quotients, reps):
            if q:
                qp = MultiPoly(self.field, self.nvars, q)
                out = [a + qp * b for a, b in zip(out, rep)]
        return out

    def is_unit(self) -> bool:
        return self.member(MultiPoly.one(self.field, self.nvars))

    def contains_ideal(self, other: IdealHandle) -> bool:
        return all(self.member(g) for g in other.generators)

    def same_ideal(self, other: IdealHandle) -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def with_generators(self, extra: Sequence[MultiPoly]) -> IdealHandle:
        gens = [g for g in self.generators if not g.is_zero()] + list(extra)
        return IdealHandle(self.field, self.nvars, gens, self.names, self.budget)

    def _check(self, f: MultiPoly):
        if f.field != self.field:
            raise DescriptorMismatch(f"{f.field} vs {self.field}")
        if f.nvars != self.nvars:
            raise ArityMismatch(f"{f.nvars} vs {self.nvars} variables")


# -- module level operations ------------------------------------------------


def groebner(I: IdealHandle, order: ExponentOrder = GRLEX) -> list[MultiPoly]:
    return I.groebner(order)


def normal_form(f: MultiPoly, I: IdealHandle) -> MultiPoly:
    return I.normal_form(f)


def member(f: MultiPoly, I: IdealHandle) -> bool:
    return I.member(f)


def cofactor_degree(cofactors: Sequence[MultiPoly], generators: Sequence[MultiPoly]) -> int:
    """max deg(c_i * g_i) over the nonzero products."""
    return max((c.total_degree() + g.total_degree() for c, g in zip(cofactors, generators)
                if not c.is_zero() and not g.is_zero()), default=0)


def macaulay_member(f: MultiPoly, I: IdealHandle, degree_bound: int) -> bool | None:
    """True if f lies in the span of {m * g : deg(m * g) <= d}; None means unknown.

    Pure linear algebra on the degree-d Macaulay matrix, independent of the
    Groebner engine.
    """
    I._check(f)
    if degree_bound < f.total_degree():
        raise ValueError("degree bound must be at least deg f")
    if f.is_zero():
        return True
    F, n = I.field, I.nvars
    monos = _monomials_up_to(n, degree_bound)
    col = {e: i for i, e in enumerate(monos)}
    space = RowSpace(F)
    steps = Budget(I.budget)
    for g in I.generators:
        if g.is_zero():
            continue
        dg = g.total_degree()
        for m in _monomials_up_to(n, degree_bound - dg):
            row = {col[tuple(a + b for a, b in zip(e, m))]: c for e, c in g.terms.items()}
            space.add(row)
            steps.tick(len(space))
    target = {col[e]: c for e, c in f.terms.items()}
    return True if space.contains(target) else None


def buchberger_moeller(field: FieldDescriptor, nvars: int, points) -> list[MultiPoly]:
    """Reduced grlex Groebner basis of the vanishing ideal of a finite point set."""
    pts = []
    seen = set()
    for P in points:
        P = tuple(field.coerce(c) for c in P)
        if len(P) != nvars:
            raise ArityMismatch(f"point {P} has {len(P)} coordinates, expected {nvars}")
        if P not in seen:
            seen.add(P)
            pts.append(P)
    key = GRLEX.key(nvars)
    normal: list[tuple] = []
    leads: list[tuple] = []
    basis: list[MultiPoly] = []
    space = RowSpace(field)
    zero_e = (0,) * nvars
    heap = [(key(zero_e), zero_e)]
    queued = {zero_e}
    while heap:
        _, t = heapq.heappop(heap)
        if any(_divides(l, t) for l in leads):
            continue
        mono = MultiPoly.monomial(field, nvars, t)
        vec = {}
        for i, P in enumerate(pts):
            v = mono.eval_raw(P)
            if not field.is_zero(v):
                vec[i] = v
        cand = len(normal)
        residue, tag = space.reduce(vec, {cand: field.one})
        if not residue:
            terms = {}
            for c, v in tag.items():
                terms[t if c == cand else normal[c]] = v
            basis.append(MultiPoly(field, nvars, terms))
            leads.append(t)
        else:
            space.add(vec, {cand: field.one})
            normal.append(t)
            for i in range(nvars):
                nxt = tuple(e + (1 if j == i else 0) for j, e in enumerate(t))
                if nxt not in queued:
                    queued.add(nxt)
                    heapq.heappush(heap, (key(nxt), nxt))
    basis.sort(key=lambda g: key(g.leading()[0]))
    return [g.monic() for g in basis]


def vanishing_ideal(field: FieldDescriptor, nvars: int, points, names=None) -> IdealHandle:
    """The full vanishing ideal of a finite point set, with its point set cached."""
    pts = tuple(dict.fromkeys(tuple(field.coerce(c) for c in P) for P in points))
    gb = buchberger_moeller(field, nvars, pts)
    ideal = IdealHandle(field, nvars, gb, names)
    ideal._gb[GRLEX] = gb
    ideal.point_set = pts
    return ideal


def points_member(f: MultiPoly, I: IdealHandle) -> bool:
    """Membership in a vanishing ideal by evaluation at its cached points."""
    if I.point_set is None:
        raise ValueError("ideal carries no point set")
    return all(f.field.is_zero(f.eval_raw(P)) for P in I.point_set)


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I cap J by eliminating t from t*I + (1-t)*J."""
    F, n = I.field, I.nvars
    shift = list(range(1, n + 1))
    t = MultiPoly.var(F, n + 1, 0)
    one = MultiPoly.one(F, n + 1)
    gens = [t * g.embed(n + 1, shift) for g in I.generators if not g.is_zero()]
    gens += [(one - t) * g.embed(n + 1, shift) for g in J.generators if not g.is_zero()]
    if not gens:
        return IdealHandle(F, n, [], I.names)
    order = ExponentOrder("elim", tuple(range(n + 1)))
    gb = buchberger(gens, order, Budget(max(I.budget, J.budget)))
    kept = []
    for g in gb:
        if g.degree_in(0) <= 0:
            kept.append(MultiPoly(F, n, {e[1:]: c for e, c in g.terms.items()}))
    return IdealHandle(F, n, kept, I.names)
