"""The fan of cones sigma_{J,K} on the coweight lattice.

A cone ``sigma_{J,K}`` is spanned by ``-alpha_j^vee`` (j in J) and
``varpi_k^vee`` (k in K) for disjoint index sets J, K. Vectors are written
in fundamental-coweight coordinates, where ``-alpha_j^vee`` is column j of
``-C``. Indices are 0-based in the library and 1-based in JSON output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable

from . import linalg, polyhedral
from .lattice import CartanMatrix, LatticeVector, subdiagram

ORACLE_MAX_RANK = 4


class GuardError(ValueError):
    """A brute-force operation was asked to run above its rank guard."""


def _fs(s: Iterable[int]) -> frozenset[int]:
    return frozenset(s)


def ray_name(kind: str, i: int) -> str:
    return f"-alpha_vee_{i + 1}" if kind == "a" else f"varpi_vee_{i + 1}"


def ray_vector(C: CartanMatrix, kind: str, i: int) -> tuple[Fraction, ...]:
    if kind == "a":
        return tuple(Fraction(-C.c[j][i]) for j in range(C.n))
    return tuple(Fraction(int(j == i)) for j in range(C.n))


@dataclass(frozen=True)
class ConeJK:
    cartan: CartanMatrix = field(repr=False)
    J: frozenset[int]
    K: frozenset[int]

    @cached_property
    def rays(self) -> list[tuple[str, int]]:
        """Ray labels in generator order: ("a", j) for -alpha_j^vee, ("w", k) for varpi_k^vee."""
        return [("a", j) for j in sorted(self.J)] + [("w", k) for k in sorted(self.K)]

    @cached_property
    def gens(self) -> list[list[Fraction]]:
        """n x (|J|+|K|) generator matrix, one column per ray."""
        cols = [ray_vector(self.cartan, *r) for r in self.rays]
        return [[col[i] for col in cols] for i in range(self.cartan.n)]

    @property
    def dim(self) -> int:
        return len(self.J) + len(self.K)

    @property
    def is_maximal(self) -> bool:
        return self.dim == self.cartan.n

    @cached_property
    def inverse(self) -> list[list[Fraction]]:
        if not self.is_maximal:
            raise ValueError("only maximal cones have a square generator matrix")
        return linalg.inverse(self.gens)

    @cached_property
    def signed_adjugate(self) -> list[list[int]]:
        """Integer matrix A with A = |det G| * G^{-1}; t = G^{-1} v >= 0 iff A v >= 0."""
        d = abs(linalg.integer_det(self.gens))
        return [[int(x * d) for x in row] for row in self.inverse]

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.J)), tuple(sorted(self.K))

    def contains_face(self, other: "ConeJK") -> bool:
        return other.J <= self.J and other.K <= self.K


def cone(C: CartanMatrix, J: Iterable[int], K: Iterable[int], verify: bool = True) -> ConeJK:
    J, K = _fs(J), _fs(K)
    if J & K:
        raise ValueError(f"J and K overlap in {sorted(J & K)}")
    if not J | K <= set(range(C.n)):
        raise IndexError("index out of range")
    c = ConeJK(C, J, K)
    if verify and c.dim and linalg.integer_rank(c.gens) != c.dim:
        raise ArithmeticError(f"generators of sigma_{c.key()} are linearly dependent")
    return c


def membership(c: ConeJK, v) -> list[Fraction] | None:
    """Nonnegative coefficients expressing ``v`` in the generators of ``c``, or None."""
    if isinstance(v, LatticeVector):
        v = v.to("coweight").coords
    v = [Fraction(x) for x in v]
    if c.dim == 0:
        return [] if not any(v) else None
    if c.is_maximal:
        t = linalg.matvec(c.inverse, v)
    else:
        t = linalg.solve(c.gens, v)
        if t is None:
            return None
    if any(x < 0 for x in t):
        return None
    return t


def intersect(c1: ConeJK, c2: ConeJK) -> ConeJK:
    if c1.cartan != c2.cartan:
        raise ValueError("cones come from different fans")
    return cone(c1.cartan, c1.J & c2.J, c1.K & c2.K, verify=False)


def intersect_oracle(c1: ConeJK, c2: ConeJK) -> list[tuple[int, ...]]:
    """Primitive ray generators of c1 & c2 by exact double description."""
    n = c1.cartan.n
    if n > ORACLE_MAX_RANK:
        raise GuardError(f"intersect_oracle is limited to rank <= {ORACLE_MAX_RANK}; use intersect()")
    return polyhedral.intersect_simplicial(c1.gens, c2.gens, n)


def canonical_cone_rays(c: ConeJK) -> list[tuple[int, ...]]:
    cols = linalg.transpose(c.gens) if c.dim else []
    return polyhedral.canonical_rays(cols)


@dataclass(frozen=True)
class QuotientPoint:
    """A representative (x; y) of a point of (C^{2n} - E)/T."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(a) for a in self.x))
        object.__setattr__(self, "y", tuple(Fraction(a) for a in self.y))
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        bad = [i for i, (a, b) in enumerate(zip(self.x, self.y)) if a == 0 and b == 0]
        if bad:
            raise ValueError(f"point lies in the exceptional set: x_i = y_i = 0 for i in {bad}")

    @property
    def zero_pattern(self) -> tuple[frozenset[int], frozenset[int]]:
        return (
            frozenset(i for i, a in enumerate(self.x) if a == 0),
            frozenset(i for i, b in enumerate(self.y) if b == 0),
        )


def zero_pattern_fixed_point(J: Iterable[int], n: int) -> QuotientPoint:
    """Canonical representative of the fixed point p_J for the maximal cone sigma_J."""
    J = _fs(J)
    return QuotientPoint(
        tuple(0 if i in J else 1 for i in range(n)),
        tuple(1 if i in J else 0 for i in range(n)),
    )


class FanSigma:
    """All cones sigma_{J,K} for a Cartan matrix."""

    def __init__(self, cartan: CartanMatrix, verify: bool = True):
        self.cartan = cartan
        n = cartan.n
        self.cones: dict[tuple, ConeJK] = {}
        # each index goes to J, to K, or to neither
        for labels in product((0, 1, 2), repeat=n):
            J = [i for i in range(n) if labels[i] == 1]
            K = [i for i in range(n) if labels[i] == 2]
            c = cone(cartan, J, K, verify=verify)
            self.cones[c.key()] = c

    @property
    def n(self) -> int:
        return self.cartan.n

    def get(self, J, K) -> ConeJK:
        return self.cones[tuple(sorted(J)), tuple(sorted(K))]

    def by_dim(self, d: int) -> list[ConeJK]:
        return [c for c in self.cones.values() if c.dim == d]

    def maximal_cones(self) -> list[ConeJK]:
        """sigma_J = sigma_{J, I-J} for every J."""
        return self.by_dim(self.n)

    @property
    def rays(self) -> list[tuple[str, int]]:
        return [("a", i) for i in range(self.n)] + [("w", i) for i in range(self.n)]

    def walls(self) -> list[ConeJK]:
        return self.by_dim(self.n - 1)


def f_vector(F: FanSigma) -> list[int]:
    counts = [0] * (F.n + 1)
    for c in F.cones.values():
        counts[c.dim] += 1
    return counts


def h_vector(F: FanSigma) -> list[int]:
    """h_k = coefficient of t^{n-k} in sum_d f_d (t-1)^{n-d}."""
    n = F.n
    f = f_vector(F)
    poly = [0] * (n + 1)  # poly[p] = coefficient of t^p
    for d, fd in enumerate(f):
        m = n - d
        for p in range(m + 1):
            poly[p] += fd * comb(m, p) * (-1) ** (m - p)
    return [poly[n - k] for k in range(n + 1)]


def adjacent_maximal(F: FanSigma, wall: ConeJK) -> tuple[ConeJK, ConeJK]:
    """The two maximal cones sigma_{J+l, K} and sigma_{J, K+l} through a wall."""
    (ell,) = set(range(F.n)) - wall.J - wall.K
    return F.get(wall.J | {ell}, wall.K), F.get(wall.J, wall.K | {ell})


def random_rational_point(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3)) for _ in range(n)]


def is_complete(F: FanSigma, samples: int = 1000, seed: int = 0, drop: Iterable = ()) -> dict:
    """Two completeness checks: wall 2-adjacency and random covering.

    ``drop`` removes maximal cones (given as J index sets) before checking;
    it exists for negative controls.
    """
    dropped = {tuple(sorted(J)) for J in drop}
    maximal = [c for c in F.maximal_cones() if tuple(sorted(c.J)) not in dropped]

    bad_walls = []
    for w in F.walls():
        containing = [m for m in maximal if m.contains_face(w)]
        expected = set(c.key() for c in adjacent_maximal(F, w))
        if len(containing) != 2 or {m.key() for m in containing} != expected:
            bad_walls.append({"J": sorted(w.J), "K": sorted(w.K), "count": len(containing)})

    # same test as membership(), on integer data for speed
    adj = [m.signed_adjugate for m in maximal]
    rng = random.Random(seed)
    uncovered = []
    for _ in range(samples):
        v = random_rational_point(rng, F.n)
        den = 1
        for x in v:
            den = linalg.lcm(den, x.denominator)
        w = [int(x * den) for x in v]
        if not any(all(sum(a * b for a, b in zip(row, w)) >= 0 for row in A) for A in adj):
            uncovered.append(v)
            if len(uncovered) >= 5:
                break
    return {
        "pass": not bad_walls and not uncovered,
        "walls_checked": len(F.walls()),
        "bad_walls": bad_walls,
        "samples": samples,
        "uncovered": [[str(x) for x in v] for v in uncovered],
    }


def primitive_collections(F: FanSigma) -> list[frozenset[tuple[str, int]]]:
    """Minimal ray subsets that span no cone, by brute force over all subsets."""
    if F.n > ORACLE_MAX_RANK:
        raise GuardError(f"primitive_collections is limited to rank <= {ORACLE_MAX_RANK}")
    faces = {frozenset(c.rays) for c in F.cones.values()}
    rays = F.rays
    out = []
    for k in range(1, len(rays) + 1):
        for S in combinations(rays, k):
            S = frozenset(S)
            if S in faces:
                continue
            if all(S - {r} in faces for r in S):
                out.append(S)
    return out


def multiplicity(c: ConeJK) -> int:
    if not c.is_maximal:
        raise ValueError("multiplicity is defined here for maximal cones only")
    return abs(linalg.integer_det(c.gens)) if c.dim else 1


def fan_json(F: FanSigma) -> dict:
    C = F.cartan
    return {
        "type": C.label,
        "rank": F.n,
        "rays": [
            {"name": ray_name(k, i), "coords": [int(x) for x in ray_vector(C, k, i)]} for k, i in F.rays
        ],
        "cones": [
            {"J": [j + 1 for j in J], "K": [k + 1 for k in K], "dim": c.dim}
            for (J, K), c in sorted(F.cones.items(), key=lambda kv: (kv[1].dim, kv[0]))
        ],
        "f_vector": f_vector(F),
        "h_vector": h_vector(F),
    }


_FILL = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072"]


def fan_svg(F: FanSigma, size: int = 400) -> str:
    """Deterministic SVG drawing of a rank-2 fan: 4 rays, 4 shaded maximal cones."""
    if F.n != 2:
        raise GuardError("SVG output needs a rank-2 fan")
    C = F.cartan
    half = size / 2
    vecs = {r: [float(x) for x in ray_vector(C, *r)] for r in F.rays}
    scale = 0.8 * half / max(max(abs(x) for x in v) for v in vecs.values())

    def pt(v, s=1.0):
        # y axis flipped so the picture has the usual orientation
        return f"{half + s * scale * v[0]:.2f},{half - s * scale * v[1]:.2f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f"<title>fan of {C.label}</title>",
    ]
    for idx, m in enumerate(sorted(F.maximal_cones(), key=lambda c: c.key())):
        a, b = (vecs[r] for r in m.rays)
        far = 3.0  # extend past the frame; the viewBox clips it
        lines.append(
            f'<polygon points="{pt([0, 0])} {pt(a, far)} {pt(b, far)}" fill="{_FILL[idx]}" '
            f'fill-opacity="0.6" stroke="none"><title>sigma_J J={[j + 1 for j in sorted(m.J)]}</title></polygon>'
        )
    for r in F.rays:
        v = vecs[r]
        lines.append(f'<line x1="{half:.2f}" y1="{half:.2f}" x2="{pt(v).split(",")[0]}" '
                     f'y2="{pt(v).split(",")[1]}" stroke="black" stroke-width="2"/>')
        lx, ly = pt(v, 1.08).split(",")
        lines.append(f'<text x="{lx}" y="{ly}" font-size="12" text-anchor="middle">{ray_name(*r)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def det_subdiagram(C: CartanMatrix, J) -> int:
    S = subdiagram(C, J)
    return S.det if S.n else 1
