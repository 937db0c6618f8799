"""Exact double description for pointed polyhedral cones.

Cones are given in H-representation ``{v : A v = 0, B v >= 0}`` and
converted to their extreme rays. Used as an independent oracle for cone
intersections, so it deliberately knows nothing about Cartan matrices.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def simplicial_h_rep(gens) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """H-representation of cone(columns of ``gens``), columns independent.

    Returns ``(eqs, ineqs)``: rows of ``eqs`` cut out the linear span, rows of
    ``ineqs`` are a dual basis inside the span, so ``v = G t`` with
    ``t = ineqs @ v``.
    """
    n = len(gens)
    k = len(gens[0]) if n else 0
    if k == 0:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)], []
    G = linalg.to_fraction_matrix(gens)
    Gt = linalg.transpose(G)
    eqs = linalg.nullspace(Gt)  # covectors vanishing on every generator
    # left inverse (G^T G)^{-1} G^T; rows lie in the span of the generators
    dual = linalg.matmul(linalg.inverse(linalg.matmul(Gt, G)), Gt)
    return eqs, dual


def extreme_rays(eqs, ineqs, dim: int) -> list[list[Fraction]]:
    """Extreme rays of ``{v in Q^dim : eqs v = 0, ineqs v >= 0}``.

    The cone must be pointed. Raises ``ValueError`` otherwise.
    """
    L = linalg.nullspace(eqs, ncols=dim) if eqs else [
        [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)
    ]
    m = len(L)
    if m == 0:
        return []
    # work in coordinates z with v = sum z_k L_k
    cons = [[_dot(a, l) for l in L] for a in ineqs]
    if linalg.rank(cons) < m if cons else True:
        raise ValueError("cone is not pointed")
    # a maximal independent subset first: each of those removes one lineality
    # direction, after which every step is a plain double-description step
    _, piv = linalg.rref(linalg.transpose(cons))
    cons = [cons[i] for i in piv] + [c for i, c in enumerate(cons) if i not in piv]

    lineality = [[Fraction(int(i == j)) for i in range(m)] for j in range(m)]
    rays: list[list[Fraction]] = []
    for step, a in enumerate(cons):
        if step < m:
            k = next(k for k, l in enumerate(lineality) if _dot(a, l) != 0)
            hit = lineality.pop(k)
            s = _dot(a, hit)
            if s < 0:
                hit = [-x for x in hit]
                s = -s
            rays = [[x - (_dot(a, r) / s) * h for x, h in zip(r, hit)] for r in rays]
            lineality = [[x - (_dot(a, l) / s) * h for x, h in zip(l, hit)] for l in lineality]
            rays.append(hit)
            continue
        pos, zero, neg = [], [], []
        for r in rays:
            s = _dot(a, r)
            (pos if s > 0 else neg if s < 0 else zero).append((r, s))
        new = [r for r, _ in pos] + [r for r, _ in zero]
        for p, sp in pos:
            for q, sq in neg:
                new.append([sp * y - sq * x for x, y in zip(p, q)])
        rays = _prune(new, cons[: step + 1], m)
    return [[_dot(row, r) for row in zip(*L)] for r in rays]


def _prune(rays, cons, m):
    """Drop zero, duplicate and non-extreme rays (rank test on active constraints)."""
    seen = {}
    for r in rays:
        if any(r):
            seen.setdefault(linalg.primitive_vector(r), r)
    out = []
    for r in seen.values():
        active = [a for a in cons if _dot(a, r) == 0]
        if (linalg.rank(active) if active else 0) == m - 1:
            out.append(r)
    return out


def canonical_rays(rays) -> list[tuple[int, ...]]:
    """Primitive integer ray generators, sorted; direction is preserved."""
    return sorted({linalg.primitive_vector(r) for r in rays if any(r)})


def intersect_simplicial(gens_a, gens_b, dim: int) -> list[tuple[int, ...]]:
    """Rays of cone(gens_a) & cone(gens_b); each ``gens`` is a dim x k matrix."""
    eq_a, in_a = simplicial_h_rep(gens_a)
    eq_b, in_b = simplicial_h_rep(gens_b)
    return canonical_rays(extreme_rays(eq_a + eq_b, in_a + in_b, dim))
