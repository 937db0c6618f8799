"""Sparse polynomials over Q, Buchberger's algorithm and graded quotient rings.

A polynomial is a dict mapping exponent tuples to nonzero Fractions.
Monomials are ordered graded-lexicographically with variable 0 largest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable

Poly = dict  # exponent tuple -> Fraction


def grlex_key(m: tuple[int, ...]):
    return (sum(m), m)


def const(c, nvars: int) -> Poly:
    c = Fraction(c)
    return {(0,) * nvars: c} if c else {}


def var(i: int, nvars: int, coef=1) -> Poly:
    return {tuple(int(k == i) for k in range(nvars)): Fraction(coef)}


def linear(coeffs: Iterable) -> Poly:
    coeffs = list(coeffs)
    n = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            out[tuple(int(k == i) for k in range(n))] = Fraction(c)
    return out


def add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, q, -1)


def scale(p: Poly, k) -> Poly:
    k = Fraction(k)
    return {m: k * c for m, c in p.items()} if k else {}


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m)
    return out


def power(p: Poly, k: int, nvars: int) -> Poly:
    out = const(1, nvars)
    for _ in range(k):
        out = mul(out, p)
    return out


def is_homogeneous(p: Poly) -> bool:
    return len({sum(m) for m in p}) <= 1


def degree(p: Poly) -> int:
    return max((sum(m) for m in p), default=-1)


def leading(p: Poly) -> tuple[tuple[int, ...], Fraction]:
    m = max(p, key=grlex_key)
    return m, p[m]


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monic(p: Poly) -> Poly:
    _, c = leading(p)
    return scale(p, 1 / c)


def substitute(p: Poly, images: list[Poly], nvars: int) -> Poly:
    """Replace variable i by images[i]."""
    out: Poly = {}
    for m, c in p.items():
        term = const(c, nvars)
        for i, e in enumerate(m):
            for _ in range(e):
                term = mul(term, images[i])
        out = add(out, term)
    return out


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All degree-d monomials, in decreasing grlex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grlex_key, reverse=True)
    return out


def format_poly(p: Poly, names: list[str]) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p, key=grlex_key, reverse=True):
        c = p[m]
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# -- Buchberger ---------------------------------------------------------------


def reduce_by(p: Poly, basis: list[Poly]) -> Poly:
    """Full reduction of p modulo basis (each basis element monic)."""
    leads = [(leading(g)[0], g) for g in basis]
    rem: Poly = {}
    p = dict(p)
    while p:
        m, c = leading(p)
        for lm, g in leads:
            if divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    t = mono_mul(gm, shift)
                    v = p.get(t, 0) - c * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: Poly, g: Poly) -> Poly:
    mf, cf = leading(f)
    mg, cg = leading(g)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    sf = {mono_mul(m, tuple(x - y for x, y in zip(lcm, mf))): c / cf for m, c in f.items()}
    sg = {mono_mul(m, tuple(x - y for x, y in zip(lcm, mg))): c / cg for m, c in g.items()}
    return sub(sf, sg)


def buchberger(gens: list[Poly]) -> list[Poly]:
    """Reduced Groebner basis under grlex (each element monic, sorted by leading monomial)."""
    G = [monic(g) for g in gens if g]
    pairs = list(combinations(range(len(G)), 2))
    while pairs:
        i, j = pairs.pop()
        mi, mj = leading(G[i])[0], leading(G[j])[0]
        # coprime leading monomials: the S-polynomial reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        r = reduce_by(_spoly(G[i], G[j]), G)
        if r:
            G.append(monic(r))
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    # minimal basis, then inter-reduce
    G = [g for i, g in enumerate(G)
         if not any(divides(leading(h)[0], leading(g)[0]) and (leading(h)[0] != leading(g)[0] or k < i)
                    for k, h in enumerate(G) if k != i)]
    out = []
    for i, g in enumerate(G):
        rest = G[:i] + G[i + 1:]
        lm, _ = leading(g)
        tail = reduce_by({m: c for m, c in g.items() if m != lm}, rest)
        out.append(add({lm: Fraction(1)}, tail))
    out.sort(key=lambda g: grlex_key(leading(g)[0]))
    return out


# -- per-degree linear algebra ------------------------------------------------


def _insert(echelon: dict, row: dict, order: dict) -> bool:
    """Reduce ``row`` against a sparse echelon basis; add it if independent."""
    row = dict(row)
    while row:
        piv = min(row, key=order.__getitem__)
        base = echelon.get(piv)
        if base is None:
            c = row[piv]
            echelon[piv] = {m: v / c for m, v in row.items()}
            return True
        c = row[piv]
        for m, v in base.items():
            w = row.get(m, 0) - c * v
            if w:
                row[m] = w
            else:
                row.pop(m, None)
    return False


def ideal_dimension_in_degree(relations: list[Poly], nvars: int, d: int) -> int:
    """dim_Q of the degree-d part of the ideal generated by homogeneous relations."""
    mons = monomials(nvars, d)
    order = {m: k for k, m in enumerate(mons)}
    echelon: dict = {}
    for r in relations:
        e = degree(r)
        if e > d or not r:
            continue
        for m in monomials(nvars, d - e):
            _insert(echelon, {mono_mul(m, rm): c for rm, c in r.items()}, order)
    return len(echelon)


# -- quotient rings -----------------------------------------------------------


@dataclass(frozen=True)
class GradedQuotientRing:
    """Q[names] / (relations), relations homogeneous; degrees count variables."""

    names: tuple[str, ...]
    relations: tuple  # of Poly, stored as tuples of items for hashability

    def __post_init__(self):
        rels = tuple(tuple(sorted(r.items())) if isinstance(r, dict) else r for r in self.relations)
        object.__setattr__(self, "relations", rels)
        for r in self.polys:
            if not is_homogeneous(r):
                raise ValueError("relations must be homogeneous")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def polys(self) -> list[Poly]:
        return [dict(r) for r in self.relations]

    @cached_property
    def groebner(self) -> list[Poly]:
        return buchberger(self.polys)

    def normal_form(self, p: Poly) -> Poly:
        return reduce_by(p, self.groebner)

    def var(self, name_or_index) -> Poly:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return var(i, self.nvars)

    def standard_monomials(self, d: int) -> list[tuple[int, ...]]:
        leads = [leading(g)[0] for g in self.groebner]
        return [m for m in monomials(self.nvars, d) if not any(divides(l, m) for l in leads)]

    def graded_dims_groebner(self, max_degree: int | None = None) -> list[int]:
        return self._dims(lambda d: len(self.standard_monomials(d)), max_degree)

    def graded_dims_linear(self, max_degree: int | None = None) -> list[int]:
        polys = self.polys

        def dim(d):
            return comb(self.nvars + d - 1, d) - ideal_dimension_in_degree(polys, self.nvars, d)

        return self._dims(dim, max_degree)

    def _dims(self, dim_of, max_degree):
        # generated in degree 1, so the first zero degree ends the series
        out = []
        d = 0
        while max_degree is None or d <= max_degree:
            k = dim_of(d)
            if k == 0:
                break
            out.append(k)
            d += 1
            if max_degree is None and d > 4 * self.nvars + 4:
                raise ArithmeticError("quotient does not look finite-dimensional")
        return out

    def element(self, p: Poly) -> "CohClass":
        return CohClass(self, self.normal_form(p))

    def format(self, p: Poly) -> str:
        return format_poly(p, list(self.names))


@dataclass(frozen=True, eq=False)
class CohClass:
    ring: GradedQuotientRing
    poly: Poly

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.ring, self.ring.normal_form(add(self.poly, other.poly)))

    def __mul__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.ring, self.ring.normal_form(mul(self.poly, other.poly)))

    def __eq__(self, other) -> bool:
        return isinstance(other, CohClass) and self.poly == other.poly

    def is_zero(self) -> bool:
        return not self.poly

    def __str__(self) -> str:
        return self.ring.format(self.poly)
