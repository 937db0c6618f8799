"""Finite Weyl groups as integer matrices on simple-root coordinates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial, prod

from . import linalg
from .lattice import CartanMatrix, LatticeVector, pair, unit

MAX_GROUP_ORDER = 51840  # |W(E6)|

Mat = tuple[tuple[int, ...], ...]


class GuardError(ValueError):
    pass


def _mat(rows) -> Mat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def _apply(m: Mat, v) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in m)


def _mul(a: Mat, b: Mat) -> Mat:
    return _mat(linalg.matmul(a, b))


def times_reflection(C: CartanMatrix, w: Mat, i: int) -> Mat:
    """w * s_i: column j of w gains -c[j][i] times column i."""
    ci = [C.c[j][i] for j in range(C.n)]
    return tuple(tuple(x - c * row[i] for x, c in zip(row, ci)) for row in w)


def simple_reflection(C: CartanMatrix, i: int) -> Mat:
    """s_i(alpha_j) = alpha_j - c[j][i] alpha_i, as a matrix acting on column vectors."""
    n = C.n
    # column j is the image of alpha_j
    return _mat([[int(r == j) - (C.c[j][i] if r == i else 0) for j in range(n)] for r in range(n)])


def is_positive(v) -> bool:
    return any(v) and all(x >= 0 for x in v)


@dataclass(frozen=True)
class RootSystem:
    cartan: CartanMatrix = field(repr=False)

    @cached_property
    def roots(self) -> frozenset[tuple[int, ...]]:
        C = self.cartan
        refl = [simple_reflection(C, i) for i in range(C.n)]
        simple = [tuple(int(k == i) for k in range(C.n)) for i in range(C.n)]
        seen = set(simple)
        todo = deque(simple)
        while todo:
            v = todo.popleft()
            for s in refl:
                u = _apply(s, v)
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return frozenset(seen)

    @cached_property
    def positive(self) -> list[tuple[int, ...]]:
        return sorted((r for r in self.roots if is_positive(r)), key=lambda r: (sum(r), r))

    def height(self, r) -> int:
        return sum(r)

    @property
    def D(self) -> int:
        return len(self.positive)

    def parabolic_positive(self, J) -> list[tuple[int, ...]]:
        J = set(J)
        return [r for r in self.positive if all(x == 0 for k, x in enumerate(r) if k not in J)]


@lru_cache(maxsize=64)
def root_system(C: CartanMatrix) -> RootSystem:
    return RootSystem(C)


@dataclass(frozen=True)
class WeylElement:
    mat: Mat
    cartan: CartanMatrix = field(repr=False, compare=False)

    @cached_property
    def length(self) -> int:
        return sum(1 for r in root_system(self.cartan).positive if not is_positive(_apply(self.mat, r)))

    @cached_property
    def word(self) -> tuple[int, ...]:
        """A reduced word, found by stripping right descents greedily (smallest index first)."""
        C = self.cartan
        w = self.mat
        out = []
        while True:
            for i in range(C.n):
                col = tuple(row[i] for row in w)  # w(alpha_i)
                if not is_positive(col):
                    w = times_reflection(C, w, i)
                    out.append(i)
                    break
            else:
                break
        return tuple(reversed(out))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_mul(self.mat, other.mat), self.cartan)

    def inverse(self) -> "WeylElement":
        return WeylElement(_mat(linalg.inverse(self.mat)), self.cartan)

    def apply(self, v) -> tuple:
        return _apply(self.mat, v)

    def is_identity(self) -> bool:
        return all(x == int(i == j) for i, row in enumerate(self.mat) for j, x in enumerate(row))


def identity(C: CartanMatrix) -> WeylElement:
    return WeylElement(_mat(linalg.identity(C.n)), C)


def reflection(C: CartanMatrix, i: int) -> WeylElement:
    return WeylElement(simple_reflection(C, i), C)


def from_word(C: CartanMatrix, word) -> WeylElement:
    w = identity(C)
    for i in word:
        w = w * reflection(C, i)
    return w


def classical_order(C: CartanMatrix) -> int:
    def one(f, r):
        return {
            "A": factorial(r + 1),
            "B": 2**r * factorial(r),
            "C": 2**r * factorial(r),
            "D": 2 ** (r - 1) * factorial(r),
            "E": {6: 51840, 7: 2903040, 8: 696729600}.get(r),
            "F": 1152,
            "G": 12,
        }[f]

    if not C.type_label:
        raise ValueError("classical order needs a typed Cartan matrix")
    return prod(one(f, r) for f, r in C.type_label)


def generate_weyl_group(C: CartanMatrix, guard: int = MAX_GROUP_ORDER) -> list[WeylElement]:
    """All elements by closure under right multiplication by simple reflections."""
    if C.type_label and classical_order(C) > guard:
        raise GuardError(f"|W| = {classical_order(C)} exceeds the guard {guard}")
    start = _mat(linalg.identity(C.n))
    seen = {start}
    order = [start]
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for i in range(C.n):
            u = times_reflection(C, w, i)
            if u not in seen:
                seen.add(u)
                order.append(u)
                todo.append(u)
                if len(seen) > guard:
                    raise GuardError(f"group exceeds the guard {guard}")
    return [WeylElement(m, C) for m in order]


def longest_element(C: CartanMatrix, J) -> WeylElement:
    """Longest element of W_J, by multiplying on the right by ascents s_j (j in J) until none remain."""
    J = sorted(set(J))
    w = _mat(linalg.identity(C.n))
    while True:
        for j in J:
            if is_positive(tuple(row[j] for row in w)):
                w = times_reflection(C, w, j)
                break
        else:
            break
    return WeylElement(w, C)


def longest_element_properties(C: CartanMatrix, J) -> dict:
    """w_J(Delta_J) = -Delta_J and w_J^{-1}(Delta - Delta_J) within the positive roots."""
    w = longest_element(C, J)
    n = C.n
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    neg_J = {tuple(-x for x in simple[j]) for j in J}
    maps_J = {w.apply(simple[j]) for j in J} == neg_J
    winv = w.inverse()
    rest_positive = all(is_positive(winv.apply(simple[k])) for k in range(n) if k not in set(J))
    length_ok = w.length == len(root_system(C).parabolic_positive(J))
    return {"maps_delta_J_to_minus": maps_J, "rest_positive": rest_positive, "length_ok": length_ok}


def all_subsets(n: int):
    for k in range(n + 1):
        yield from (frozenset(s) for s in combinations(range(n), k))


def fixed_point_set(C: CartanMatrix) -> list[tuple[frozenset[int], WeylElement]]:
    return [(J, longest_element(C, J)) for J in all_subsets(C.n)]


def fundamental_weight_root_coords(C: CartanMatrix, i: int) -> tuple[Fraction, ...]:
    return unit(C, i, "weight").to("root").coords


def bruhat_geq_simple(w: WeylElement, i: int) -> bool:
    """w >= s_i in Bruhat order iff w moves varpi_i."""
    v = fundamental_weight_root_coords(w.cartan, i)
    return tuple(w.apply(v)) != tuple(v)


def setB_criterion(w: WeylElement, i: int) -> bool:
    """True iff no w^{-1} alpha_k equals -alpha_i."""
    n = w.cartan.n
    target = tuple(-int(k == i) for k in range(n))
    inv = w.inverse()
    return all(inv.apply(tuple(int(m == k) for m in range(n))) != target for k in range(n))


def zero_locus_partition(C: CartanMatrix, i: int, fixed=None) -> dict:
    fixed = fixed or fixed_point_set(C)
    setA = [J for J, w in fixed if bruhat_geq_simple(w, i)]
    setB = [J for J, w in fixed if setB_criterion(w, i)]
    a, b = set(setA), set(setB)
    return {
        "setA": setA,
        "setB": setB,
        "disjoint": not (a & b),
        "union_is_all": len(a | b) == len(fixed),
        "setA_is_i_in_J": a == {J for J, _ in fixed if i in J},
        "setB_is_i_not_in_J": b == {J for J, _ in fixed if i not in J},
    }


def reflect_weight(C: CartanMatrix, k: int, i: int) -> LatticeVector:
    """s_k(varpi_i) = varpi_i - <varpi_i, alpha_k^vee> alpha_k, in weight coordinates."""
    w = unit(C, i, "weight")
    coroot = unit(C, k, "coroot")
    alpha_k = unit(C, k, "root").to("weight")
    return w + alpha_k.scale(-pair(w, coroot))


def star_involution(C: CartanMatrix) -> list[int]:
    """i -> i* with -w_0(alpha_i) = alpha_{i*}."""
    w0 = longest_element(C, range(C.n))
    out = []
    for i in range(C.n):
        img = tuple(-x for x in w0.apply(tuple(int(k == i) for k in range(C.n))))
        out.append(img.index(1))
    return out


def fixed_point_report(C: CartanMatrix, i: int) -> dict:
    r = zero_locus_partition(C, i)
    return {
        "type": C.label,
        "i": i + 1,
        "setA": [[j + 1 for j in sorted(J)] for J in r["setA"]],
        "setB": [[j + 1 for j in sorted(J)] for J in r["setB"]],
        "disjoint": r["disjoint"],
        "union_is_all": r["union_is_all"],
    }
