"""Cartan matrices, the weight/coweight lattices and their pairings.

Vectors are coordinate tuples of Fractions tagged with the basis they are
written in:

``root``      simple roots alpha_i           (weight side)
``weight``    fundamental weights varpi_i    (weight side)
``coroot``    simple coroots alpha_i^vee     (coweight side)
``coweight``  fundamental coweights varpi_i^vee (coweight side)

The relations used throughout are ``alpha_i = sum_j c[i][j] varpi_j`` and
``alpha_j^vee = sum_k c[k][j] varpi_k^vee``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .dynkin import DynkinTypeError, component_matrix, format_type, parse_type

WEIGHT_SIDE = ("root", "weight")
COWEIGHT_SIDE = ("coroot", "coweight")


def _subsets(n: int):
    for k in range(n + 1):
        yield from combinations(range(n), k)


@dataclass(frozen=True)
class CartanMatrix:
    """A finite-type Cartan matrix ``c[i][j] = <alpha_i, alpha_j^vee>``.

    Indices are 0-based. ``type_label`` lists the Dynkin components the
    matrix was built from (empty for ad-hoc submatrices).
    """

    c: tuple[tuple[int, ...], ...]
    type_label: tuple[tuple[str, int], ...] = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in row) for row in self.c))
        if self.check:
            self._validate()

    def _validate(self):
        n = self.n
        c = self.c
        if any(len(row) != n for row in c):
            raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if c[i][i] != 2:
                raise ValueError(f"diagonal entry c[{i}][{i}] = {c[i][i]} != 2")
            for j in range(n):
                if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                    raise ValueError(f"off-diagonal pattern violated at ({i}, {j})")
        for J in _subsets(n):
            if J and linalg.det(linalg.submatrix(c, J, J)) <= 0:
                raise ValueError(f"principal minor on {J} is not positive; not finite type")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def label(self) -> str:
        return format_type(self.type_label) if self.type_label else f"rank{self.n}"

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.c]

    @cached_property
    def det(self) -> int:
        return linalg.integer_det(self.c) if self.n else 1

    @cached_property
    def inv(self) -> list[list[Fraction]]:
        return linalg.inverse(self.c)

    def __getitem__(self, ij):
        i, j = ij
        return self.c[i][j]


def cartan_matrix(spec) -> CartanMatrix:
    """Block-diagonal Cartan matrix of a direct sum of Dynkin components.

    ``spec`` is either a type string such as ``"B2,G2"`` or a list of
    ``(family, rank)`` pairs.
    """
    components = parse_type(spec) if isinstance(spec, str) else [(f.upper(), int(r)) for f, r in spec]
    if not components:
        raise DynkinTypeError("empty Dynkin type")
    blocks = [component_matrix(f, r) for f, r in components]
    n = sum(len(b) for b in blocks)
    c = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                c[off + i][off + j] = x
        off += len(b)
    return CartanMatrix(tuple(map(tuple, c)), tuple(components))


def subdiagram(C: CartanMatrix, J: Iterable[int]) -> CartanMatrix:
    J = sorted(J)
    return CartanMatrix(tuple(tuple(C.c[i][j] for j in J) for i in J), check=False)


def inverse_nonneg(C: CartanMatrix) -> tuple[list[list[Fraction]], bool]:
    inv = linalg.inverse(C.c)
    return inv, all(x >= 0 for row in inv for x in row)


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[Fraction, ...]
    basis: str
    cartan: CartanMatrix = field(compare=True, repr=False)

    def __post_init__(self):
        if self.basis not in WEIGHT_SIDE + COWEIGHT_SIDE:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        if (other.basis, other.cartan) != (self.basis, self.cartan):
            raise ValueError("cannot add vectors in different bases")
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis, self.cartan)

    def scale(self, k) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self.coords), self.basis, self.cartan)

    @property
    def side(self) -> str:
        return "weight" if self.basis in WEIGHT_SIDE else "coweight"

    def to(self, basis: str) -> "LatticeVector":
        """Re-express the vector in another basis on the same side."""
        C = self.cartan
        v = list(self.coords)
        if basis == self.basis:
            return self
        pair = (self.basis, basis)
        if pair == ("root", "weight"):
            out = linalg.matvec(linalg.transpose(C.c), v)
        elif pair == ("weight", "root"):
            out = linalg.matvec(linalg.transpose(C.inv), v)
        elif pair == ("coroot", "coweight"):
            out = linalg.matvec(C.c, v)
        elif pair == ("coweight", "coroot"):
            out = linalg.matvec(C.inv, v)
        else:
            raise ValueError(f"cannot convert {self.basis} to {basis}")
        return LatticeVector(tuple(out), basis, C)


def unit(C: CartanMatrix, i: int, basis: str) -> LatticeVector:
    return LatticeVector(tuple(Fraction(int(k == i)) for k in range(C.n)), basis, C)


def coroot_in_coweight_coords(C: CartanMatrix, i: int) -> LatticeVector:
    """alpha_i^vee in the fundamental-coweight basis: column i of C."""
    if not 0 <= i < C.n:
        raise IndexError(f"index {i} out of range for rank {C.n}")
    return LatticeVector(tuple(Fraction(C.c[j][i]) for j in range(C.n)), "coweight", C)


def pair(w: LatticeVector, v: LatticeVector) -> Fraction:
    """The pairing <w, v> of a weight-side and a coweight-side vector."""
    if w.side != "weight" or v.side != "coweight":
        raise ValueError(f"pairing needs (weight side, coweight side), got ({w.basis}, {v.basis})")
    if w.cartan != v.cartan:
        raise ValueError("vectors come from different Cartan matrices")
    r = w.to("root").coords
    x = v.to("coweight").coords
    return sum((a * b for a, b in zip(r, x)), Fraction(0))


# -- the Cox sequence 0 -> Lambda_r -> Z^{2I} -> Lambda -> 0 -------------------


def cox_maps(C: CartanMatrix) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matrices of the two maps of the Cox sequence.

    ``first`` is 2n x n: alpha_i -> sum_j <alpha_i, -alpha_j^vee> e_j + e_{n+i}.
    ``second`` is n x 2n: e_i -> varpi_i, e_{n+i} -> alpha_i (varpi coordinates).
    """
    n = C.n
    first = [[-C.c[i][j] for i in range(n)] for j in range(n)]
    first += [[int(i == j) for i in range(n)] for j in range(n)]
    second = [[int(i == j) for i in range(n)] + [C.c[i][j] for i in range(n)] for j in range(n)]
    return first, second


def verify_cox_sequence(C: CartanMatrix) -> dict:
    n = C.n
    first, second = cox_maps(C)
    composite_zero = all(x == 0 for row in linalg.matmul(second, first) for x in row)
    div_first = linalg.elementary_divisors(first)
    div_second = linalg.elementary_divisors(second)
    injective = len(div_first) == n
    surjective = len(div_second) == n and all(d == 1 for d in div_second)
    # ker(second) has rank 2n - rank(second); im(first) equals it iff the ranks
    # agree and im(first) is saturated (all elementary divisors 1).
    kernel_rank = 2 * n - len(div_second)
    exact_middle = composite_zero and kernel_rank == len(div_first) and all(d == 1 for d in div_first)
    return {
        "type": C.label,
        "pass": bool(injective and surjective and exact_middle),
        "injective": injective,
        "surjective": surjective,
        "exact_middle": exact_middle,
        "composite_zero": composite_zero,
        "rank_first": len(div_first),
        "rank_second": len(div_second),
        "divisors_first": div_first,
        "divisors_second": div_second,
        "first": first,
        "second": second,
    }
