"""Wall relations and the sign pattern of D_{-alpha_i^vee} on invariant curves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fan import ConeJK, FanSigma, adjacent_maximal, ray_vector
from .lattice import subdiagram

POSITIVE, NONNEGATIVE, ZERO, NEGATIVE = "positive", "nonnegative", "zero", "negative"


@dataclass(frozen=True)
class WallRelation:
    """x_ell(-a_ell) + sum x_j(-a_j) + sum y_k w_k + y_ell w_ell = 0, scaled so y_ell = 1."""

    wall: ConeJK
    ell: int
    x_ell: Fraction
    x: dict[int, Fraction]
    y: dict[int, Fraction]
    y_ell: Fraction

    def residual(self) -> list[Fraction]:
        C = self.wall.cartan
        terms = [(self.x_ell, ("a", self.ell)), (self.y_ell, ("w", self.ell))]
        terms += [(c, ("a", j)) for j, c in self.x.items()]
        terms += [(c, ("w", k)) for k, c in self.y.items()]
        out = [Fraction(0)] * C.n
        for coef, r in terms:
            out = [o + coef * v for o, v in zip(out, ray_vector(C, *r))]
        return out


def walls(F: FanSigma) -> list[tuple[ConeJK, tuple[ConeJK, ConeJK]]]:
    return [(w, adjacent_maximal(F, w)) for w in F.walls()]


def _ell(F: FanSigma, wall: ConeJK) -> int:
    rest = set(range(F.n)) - wall.J - wall.K
    if wall.dim != F.n - 1 or len(rest) != 1:
        raise ValueError("not a codimension-1 cone")
    return rest.pop()


def closed_form_x(F: FanSigma, wall: ConeJK) -> dict[int, Fraction]:
    """x_j = (C_{J'}^{-1})_{j, ell} for j in J' = J + {ell}, with y_ell = 1."""
    ell = _ell(F, wall)
    Jp = sorted(wall.J | {ell})
    inv = linalg.inverse(subdiagram(F.cartan, Jp).c)
    col = Jp.index(ell)
    return {j: inv[r][col] for r, j in enumerate(Jp)}


def wall_relation(F: FanSigma, wall: ConeJK) -> WallRelation:
    ell = _ell(F, wall)
    J, K = sorted(wall.J), sorted(wall.K)
    rays = [("a", ell)] + [("a", j) for j in J] + [("w", k) for k in K] + [("w", ell)]
    cols = [ray_vector(F.cartan, *r) for r in rays]
    A = [[col[i] for col in cols] for i in range(F.n)]
    ker = linalg.nullspace(A)
    if len(ker) != 1:
        raise ArithmeticError(f"wall relation kernel has dimension {len(ker)}, expected 1")
    v = ker[0]
    if v[-1] == 0:
        raise ArithmeticError("y_ell vanishes; input is not a wall")
    v = [c / v[-1] for c in v]
    rel = WallRelation(
        wall=wall,
        ell=ell,
        x_ell=v[0],
        x={j: v[1 + t] for t, j in enumerate(J)},
        y={k: v[1 + len(J) + t] for t, k in enumerate(K)},
        y_ell=v[-1],
    )
    if rel.x_ell <= 0:
        raise ArithmeticError(f"x_ell = {rel.x_ell} is not positive")
    closed = closed_form_x(F, wall)
    if closed[ell] != rel.x_ell or any(closed[j] != rel.x[j] for j in J):
        raise ArithmeticError("kernel solution disagrees with the Cartan-inverse closed form")
    return rel


def _sign(q: Fraction) -> str:
    return POSITIVE if q > 0 else ZERO if q == 0 else NEGATIVE


def intersection_sign(F: FanSigma, i: int, wall: ConeJK, rel: WallRelation | None = None) -> str:
    """Sign of the wall-relation coefficient of -alpha_i^vee.

    ``positive`` for i = ell; for i in J the exact sign of x_i (``positive``
    or ``zero``, never ``negative`` when wall positivity holds); ``zero``
    otherwise.
    """
    rel = rel or wall_relation(F, wall)
    if i == rel.ell:
        return _sign(rel.x_ell)
    if i in wall.J:
        return _sign(rel.x[i])
    return ZERO


def wall_report(F: FanSigma, wall: ConeJK) -> dict:
    rel = wall_relation(F, wall)
    return {
        "wall": {"J": [j + 1 for j in sorted(wall.J)], "K": [k + 1 for k in sorted(wall.K)], "ell": rel.ell + 1},
        "relation": {
            "x_ell": str(rel.x_ell),
            "x": {str(j + 1): str(c) for j, c in sorted(rel.x.items())},
            "y": {str(k + 1): str(c) for k, c in sorted(rel.y.items())},
            "y_ell": str(rel.y_ell),
        },
        "signs": [intersection_sign(F, i, wall, rel) for i in range(F.n)],
    }


def kleiman_ample_check(F: FanSigma) -> dict:
    """Every invariant curve meets sum_i D_{-alpha_i^vee} with some positive and no negative sign."""
    failures = []
    positivity = True
    for w in F.walls():
        rel = wall_relation(F, w)
        if any(rel.x[j] < 0 for j in rel.x) or rel.y_ell <= 0:
            positivity = False
        signs = [intersection_sign(F, i, w, rel) for i in range(F.n)]
        if NEGATIVE in signs or POSITIVE not in signs:
            failures.append({"J": [j + 1 for j in sorted(w.J)], "K": [k + 1 for k in sorted(w.K)], "signs": signs})
    return {
        "type": F.cartan.label,
        "pass": not failures and positivity,
        "walls": len(F.walls()),
        "wall_positivity": positivity,
        "failures": failures,
    }
