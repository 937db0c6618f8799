"""The Peterson variety of SL_{n+1} and the morphism to the toric variety.

Matrices are (n+1) x (n+1) with Fraction entries, indices 0-based. With
e = sum_i E_{i,i+1} and M = g^{-1} e g, the coset gB lies in the Peterson
variety iff M vanishes strictly below the subdiagonal. Section values:

* delta_i(g) = leading principal i x i minor of g,
* q_i(g) = -M[i+1][i]   (1-based i; the coefficient of f_i, negated).
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import linalg
from .fan import QuotientPoint, zero_pattern_fixed_point
from .lattice import CartanMatrix, cartan_matrix

EXACT_RANKS = (1, 2)
NUMERIC_RANK = 3


class FalsificationError(AssertionError):
    """A point of the Peterson variety with delta_i = q_i = 0 for some i."""


def _frac_matrix(g) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in g)


def nilpotent_e(size: int) -> list[list[Fraction]]:
    return [[Fraction(int(c == r + 1)) for c in range(size)] for r in range(size)]


@dataclass(frozen=True)
class PetersonPoint:
    g: tuple[tuple[Fraction, ...], ...]
    check_det: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "g", _frac_matrix(self.g))
        if self.check_det and linalg.det(self.g) != 1:
            raise ValueError("g must have determinant 1")

    @property
    def size(self) -> int:
        return len(self.g)

    @property
    def rank(self) -> int:
        return self.size - 1

    @cached_property
    def M(self) -> list[list[Fraction]]:
        return linalg.matmul(linalg.inverse(self.g), linalg.matmul(nilpotent_e(self.size), self.g))

    @cached_property
    def in_big_cell(self) -> bool:
        """g in U^- B, i.e. all leading principal minors nonzero."""
        return all(delta(self, i) != 0 for i in range(1, self.size))


def _as_point(g) -> PetersonPoint:
    return g if isinstance(g, PetersonPoint) else PetersonPoint(g)


def delta(g, i: int) -> Fraction:
    """Leading principal i x i minor (i is 1-based)."""
    g = g.g if isinstance(g, PetersonPoint) else _frac_matrix(g)
    return linalg.det([row[:i] for row in g[:i]])


def q_alpha(g, i: int) -> Fraction:
    """-(g^{-1} e g)[i+1][i] with 1-based i."""
    return -_as_point(g).M[i][i - 1]


def in_peterson(g) -> bool:
    M = _as_point(g).M
    n = len(M)
    return all(M[r][s] == 0 for r in range(n) for s in range(n) if r > s + 1)


def section_values(g) -> tuple[list[Fraction], list[Fraction]]:
    g = _as_point(g)
    idx = range(1, g.size)
    return [delta(g, i) for i in idx], [q_alpha(g, i) for i in idx]


def psi(g) -> QuotientPoint:
    g = _as_point(g)
    if not in_peterson(g):
        raise ValueError("g B is not in the Peterson variety")
    d, q = section_values(g)
    bad = [i + 1 for i in range(len(d)) if d[i] == 0 and q[i] == 0]
    if bad:
        raise FalsificationError(f"delta_i = q_i = 0 simultaneously for i in {bad}")
    return QuotientPoint(tuple(d), tuple(q))


# -- Weyl group representatives --------------------------------------------


def signed_longest(size: int) -> list[list[Fraction]]:
    """Antidiagonal representative of w_0 in SL_size with f_i = -Ad(w0^{-1}) e_{i*}.

    Conjugating E_{k,k+1} by the antidiagonal matrix with signs s_k gives
    s_k s_{k+1} times a lowering operator, so the signs alternate; the first
    sign is fixed by det = 1.
    """
    for s0 in (-1, 1):
        signs = [s0 * (-1) ** k for k in range(size)]
        w = [[Fraction(signs[r]) if c == size - 1 - r else Fraction(0) for c in range(size)] for r in range(size)]
        if linalg.det(w) == 1:
            return w
    raise AssertionError("no sign choice gives determinant 1")


def _runs(J) -> list[tuple[int, int]]:
    """Maximal runs of consecutive 0-based node indices."""
    out = []
    for j in sorted(J):
        if out and out[-1][1] == j - 1:
            out[-1] = (out[-1][0], j)
        else:
            out.append((j, j))
    return out


def signed_w(n: int, J) -> PetersonPoint:
    """Representative of w_J: a signed longest block on rows a..b+1 for each run a..b of J."""
    size = n + 1
    g = [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]
    for a, b in _runs(J):
        block = signed_longest(b - a + 2)
        for r, row in enumerate(block):
            for c, x in enumerate(row):
                g[a + r][a + c] = x
    return PetersonPoint(g)


def fixed_point_image_check(n: int, J) -> bool:
    p = psi(signed_w(n, J))
    expected = zero_pattern_fixed_point(J, n)
    return p.zero_pattern == expected.zero_pattern


# -- the big cell -------------------------------------------------------------


def lower_unipotent(entries: dict[tuple[int, int], Fraction], size: int) -> list[list[Fraction]]:
    g = [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]
    for (r, c), v in entries.items():
        g[r][c] = Fraction(v)
    return g


def sl2_cell(t) -> PetersonPoint:
    return PetersonPoint(lower_unipotent({(1, 0): t}, 2))


def sl3_cell(a, c) -> PetersonPoint:
    """The point with free parameters (a, c); b = a^2 c / (a + c) puts it on Y."""
    a, c = Fraction(a), Fraction(c)
    if a + c == 0:
        raise ZeroDivisionError("a + c = 0 is outside the chart")
    b = a * a * c / (a + c)
    return PetersonPoint(lower_unipotent({(1, 0): a, (2, 0): b, (2, 1): c}, 3))


def sl3_closed_form(a, c) -> tuple[Fraction, Fraction]:
    a, c = Fraction(a), Fraction(c)
    return a**3 / (a + c), c**3 / (a + c)


def random_rational(rng: random.Random, bound: int = 1000, den: int = 100) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def sample_peterson_cell(n: int, count: int, seed: int, max_tries: int = 1000) -> list[tuple[tuple, PetersonPoint]]:
    """Exact points of Y meeting the big cell, as (parameters, point) pairs."""
    if n not in EXACT_RANKS:
        raise ValueError(f"exact cell sampling supports rank 1 or 2, not {n}")
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries + count:
            raise RuntimeError("rejection sampling exhausted its bound")
        if n == 1:
            t = random_rational(rng)
            out.append(((t,), sl2_cell(t)))
            continue
        a, c = random_rational(rng), random_rational(rng)
        if a + c == 0:
            continue
        out.append(((a, c), sl3_cell(a, c)))
    for _, p in out:
        assert in_peterson(p)
    return out


# -- Bruhat factorization and Kostant's formula ----------------------------------


def lu(h) -> tuple[list[list[Fraction]], list[list[Fraction]]] | None:
    """h = L R with L lower unipotent, R upper triangular; None if some leading minor vanishes."""
    size = len(h)
    R = [list(map(Fraction, row)) for row in h]
    L = [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]
    for k in range(size):
        if R[k][k] == 0:
            return None
        for r in range(k + 1, size):
            f = R[r][k] / R[k][k]
            L[r][k] = f
            R[r] = [x - f * y for x, y in zip(R[r], R[k])]
    return L, R


def bruhat_factor(g) -> tuple[list[list[Fraction]], list[list[Fraction]]] | None:
    """Write gB = u~ w0 B with u~ upper unipotent; returns (u~, u~ w0), or None off U w0 B."""
    g = _as_point(g)
    w0 = signed_longest(g.size)
    w0inv = linalg.inverse(w0)
    fac = lu(linalg.matmul(w0inv, g.g))
    if fac is None:
        return None
    L, R = fac
    u_tilde = linalg.matmul(linalg.matmul(w0, L), w0inv)
    return u_tilde, linalg.matmul(u_tilde, w0)


def kostant_check(u, C: CartanMatrix | None = None) -> dict:
    """q'_i(u) = prod_j Delta'_j(u)^{-c_ij} with Delta'_j = delta_j(u~ w0)."""
    u = _as_point(u)
    n = u.rank
    C = C or cartan_matrix(f"A{n}")
    fac = bruhat_factor(u)
    if fac is None:
        return {"status": "skipped", "reason": "not in U w0 B"}
    u_tilde, uw0 = fac
    assert all(u_tilde[r][c] == int(r == c) for r in range(n + 1) for c in range(r + 1))
    # same coset: (u~ w0)^{-1} u is upper triangular
    b = linalg.matmul(linalg.inverse(uw0), u.g)
    assert all(b[r][c] == 0 for r in range(n + 1) for c in range(r))
    dprime = [delta(uw0, j) for j in range(1, n + 1)]
    q = [q_alpha(u, i) for i in range(1, n + 1)]
    rhs = []
    for i in range(n):
        v = Fraction(1)
        for j in range(n):
            v *= dprime[j] ** (-C.c[i][j])
        rhs.append(v)
    q_w0 = [q_alpha(PetersonPoint(uw0), i) for i in range(1, n + 1)]
    return {
        "status": "pass" if q == rhs and all(x == 1 for x in q_w0) else "fail",
        "q": q,
        "delta_prime": dprime,
        "product": rhs,
        "q_at_u_tilde_w0": q_w0,
    }


# -- Jacobian ----------------------------------------------------------------------


def cell_jacobian(params) -> list[list[Fraction]]:
    """d q'_i / d(parameters) from the closed forms (t^2, or a^3/(a+c), c^3/(a+c))."""
    if len(params) == 1:
        (t,) = params
        return [[2 * Fraction(t)]]
    a, c = map(Fraction, params)
    s = a + c
    return [
        [(2 * a**3 + 3 * a**2 * c) / s**2, -(a**3) / s**2],
        [-(c**3) / s**2, (2 * c**3 + 3 * a * c**2) / s**2],
    ]


def jacobian_rank_check(n: int, count: int, seed: int) -> dict:
    """Generic rank of the Jacobian of (q'_i) in the cell parameters."""
    samples = sample_peterson_cell(n, count, seed)
    best, witness = 0, None
    for params, _ in samples:
        r = linalg.rank(cell_jacobian(params))
        if r > best:
            best, witness = r, params
        if best == n:
            break
    return {
        "status": "pass" if best == n else "inconclusive",
        "rank": best,
        "witness": [str(x) for x in witness] if witness else None,
    }


# -- torus actions ------------------------------------------------------------------


def s_exponents(n: int) -> list[int]:
    """a_k = n - 2k, k = 0..n: common difference -2, sum 0, so alpha_i(gamma(z)) = z^2."""
    return [n - 2 * k for k in range(n + 1)]


def gamma(n: int, z) -> list[list[Fraction]]:
    z = Fraction(z)
    a = s_exponents(n)
    return [[z ** a[r] if r == c else Fraction(0) for c in range(n + 1)] for r in range(n + 1)]


def varpi_of_diag(d, i: int) -> Fraction:
    v = Fraction(1)
    for x in d[:i]:
        v *= x
    return v


def alpha_of_diag(d, i: int) -> Fraction:
    return Fraction(d[i - 1]) / d[i]


def torus_translate(p: QuotientPoint, d) -> QuotientPoint:
    """The quotient torus: t . (x; y) = (varpi_i(t) x_i; alpha_i(t) y_i) for t = diag(d)."""
    n = len(p.x)
    return QuotientPoint(
        tuple(varpi_of_diag(d, i + 1) * p.x[i] for i in range(n)),
        tuple(alpha_of_diag(d, i + 1) * p.y[i] for i in range(n)),
    )


def toric_action(p: QuotientPoint, d) -> QuotientPoint:
    """The torus of the toric variety: [t] . [x; y] = [x; alpha_i(t) y_i]."""
    n = len(p.x)
    return QuotientPoint(p.x, tuple(alpha_of_diag(d, i + 1) * p.y[i] for i in range(n)))


def point_equal_mod_T(p: QuotientPoint, p2: QuotientPoint, C: CartanMatrix) -> bool:
    """Decide whether p2 = t . p for some t in the torus with weights (varpi; alpha).

    The torus is parametrized by s_j = varpi_j(t), so alpha_i(t) = prod_j s_j^{c_ij}.
    """
    if p.zero_pattern != p2.zero_pattern:
        return False
    n = C.n
    forced = {j: p2.x[j] / p.x[j] for j in range(n) if p.x[j] != 0}
    free = [j for j in range(n) if p.x[j] == 0]
    rows, targets = [], []
    for i in range(n):
        if p.y[i] == 0:
            continue
        r = p2.y[i] / p.y[i]
        for j, s in forced.items():
            r /= s ** C.c[i][j]
        rows.append([C.c[i][j] for j in free])
        targets.append(r)
    if not rows:
        return True
    # prod_j s_j^{E_ij} = r_i is solvable in (C^x)^free iff every left-kernel relation holds
    if free:
        kernel = linalg.integer_kernel(linalg.transpose(rows))
    else:
        kernel = linalg.identity(len(rows))
    for z in kernel:
        v = Fraction(1)
        for zi, r in zip(z, targets):
            v *= r ** zi
        if v != 1:
            return False
    return True


def equivariance_check(n: int, z, g) -> dict:
    g = _as_point(g)
    z = Fraction(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    C = cartan_matrix(f"A{n}")
    gam = gamma(n, z)
    diag = [gam[k][k] for k in range(n + 1)]
    tg = PetersonPoint(linalg.matmul(gam, g.g))
    d0, q0 = section_values(g)
    d1, q1 = section_values(tg)
    delta_ok = all(d1[i] == varpi_of_diag(diag, i + 1) * d0[i] for i in range(n))
    q_ok = all(q1[i] == q0[i] / z**2 for i in range(n))
    # psi(gamma g) against psi(g) moved by the image [gamma^{-2}] in the toric torus
    moved = toric_action(psi(g), [x ** -2 for x in diag])
    mod_T = point_equal_mod_T(psi(tg), moved, C)
    return {"delta_law": delta_ok, "q_law": q_ok, "psi_mod_T": mod_T, "pass": delta_ok and q_ok and mod_T}


# -- exploratory: points of the cell over a target ------------------------------------


def cell_fiber_count(n: int, target, tol: float = 1e-9) -> int:
    """Number of cell points with (q'_i) equal to a generic target, over C.

    Exploratory only: uses the explicit elimination (t^2 = y, or a = lambda c
    with lambda^3 = y1/y2 and c^2 = y2 (lambda + 1)) and floating point.
    """
    if n == 1:
        (y,) = target
        return 1 if y == 0 else 2
    y1, y2 = (complex(x) for x in target)
    if y1 == 0 or y2 == 0:
        raise ValueError("target must be generic (nonzero coordinates)")
    pts = []
    root = complex(y1 / y2) ** (1 / 3)
    for k in range(3):
        lam = root * cmath.exp(2j * cmath.pi * k / 3)
        c0 = cmath.sqrt(y2 * (lam + 1))
        for c in (c0, -c0):
            a = lam * c
            if abs(a + c) < tol:
                continue
            ok = abs(a**3 / (a + c) - y1) < 1e-7 * (1 + abs(y1)) and abs(c**3 / (a + c) - y2) < 1e-7 * (1 + abs(y2))
            if ok and not any(abs(a - p) < tol and abs(c - q) < tol for p, q in pts):
                pts.append((a, c))
    return len(pts)


# -- SL4, floating point (optional) -----------------------------------------------------


def sl4_numeric_sample(rng: random.Random, newton_tol: float = 1e-10, max_iter: int = 100):
    """One point of Y in the SL4 big cell, by Newton iteration in floating point.

    Free parameters are the subdiagonal entries; the three entries below it are
    solved from the vanishing of M[2][0], M[3][0], M[3][1]. Returns None when
    Newton does not converge.
    """
    import numpy as np

    sub = [rng.uniform(0.5, 2.0) * rng.choice((-1, 1)) for _ in range(3)]

    def build(v):
        u = np.eye(4)
        u[1, 0], u[2, 1], u[3, 2] = sub
        u[2, 0], u[3, 1], u[3, 0] = v
        return u

    e = np.diag(np.ones(3), 1)

    def F(v):
        u = build(v)
        M = np.linalg.solve(u, e @ u)
        return np.array([M[2, 0], M[3, 1], M[3, 0]])

    v = np.array([rng.uniform(-1, 1) for _ in range(3)])
    for _ in range(max_iter):
        f = F(v)
        if np.max(np.abs(f)) < newton_tol:
            return build(v)
        J = np.empty((3, 3))
        h = 1e-7
        for k in range(3):
            dv = np.zeros(3)
            dv[k] = h
            J[:, k] = (F(v + dv) - F(v - dv)) / (2 * h)
        try:
            v = v - np.linalg.solve(J, f)
        except np.linalg.LinAlgError:
            return None
    return None


def sl4_numeric_check(count: int, seed: int, rel_tol: float = 1e-8) -> dict:
    """Kostant's formula and nonvanishing on numeric SL4 cell points."""
    import numpy as np

    rng = random.Random(seed)
    C = np.array(cartan_matrix("A3").c, dtype=float)
    w0 = np.array(signed_longest(4), dtype=float)
    e = np.diag(np.ones(3), 1)
    ok = skipped = 0
    failures = []
    for _ in range(count):
        u = sl4_numeric_sample(rng)
        if u is None:
            skipped += 1
            continue
        M = np.linalg.solve(u, e @ u)
        q = np.array([-M[i + 1, i] for i in range(3)])
        h = np.linalg.solve(w0, u)
        # LU without pivoting
        L = np.eye(4)
        R = h.copy()
        for k in range(4):
            for r in range(k + 1, 4):
                L[r, k] = R[r, k] / R[k, k]
                R[r] -= L[r, k] * R[k]
        uw0 = w0 @ L
        dprime = np.array([np.linalg.det(uw0[:j, :j]) for j in range(1, 4)])
        prod = np.array([np.prod(dprime ** (-C[i])) for i in range(3)])
        err = np.max(np.abs(q - prod) / np.maximum(1.0, np.abs(q)))
        if err < rel_tol:
            ok += 1
        else:
            failures.append(float(err))
    return {"points": ok + len(failures), "kostant_ok": ok, "failures": failures, "newton_skipped": skipped,
            "pass": not failures and ok > 0}


# -- report ------------------------------------------------------------------------------


def all_subsets(n: int):
    for k in range(n + 1):
        yield from (frozenset(s) for s in combinations(range(n), k))


def peterson_report(n: int, samples: int, seed: int) -> dict:
    pts = sample_peterson_cell(n, samples, seed)
    C = cartan_matrix(f"A{n}")
    kostant = [kostant_check(p, C) for _, p in pts]
    done = [k for k in kostant if k["status"] != "skipped"]
    kostant_pass = bool(done) and all(k["status"] == "pass" for k in done) and len(done) >= 0.95 * len(kostant)

    closed_ok = True
    for params, p in pts:
        q = [q_alpha(p, i) for i in range(1, n + 1)]
        if n == 1:
            closed_ok &= q == [params[0] ** 2]
        else:
            closed_ok &= tuple(q) == sl3_closed_form(*params)

    nonvanishing = True
    fixed = []
    for J in all_subsets(n):
        w = signed_w(n, J)
        try:
            psi(w)
        except FalsificationError:
            nonvanishing = False
        fixed.append({"J": [j + 1 for j in sorted(J)], "pattern_ok": fixed_point_image_check(n, J)})
    for _, p in pts:
        try:
            psi(p)
        except FalsificationError:
            nonvanishing = False

    jac = jacobian_rank_check(n, max(samples, 1), seed)
    rng = random.Random(seed)
    equiv_ok = all(
        equivariance_check(n, random_rational(rng) or 1, p)["pass"] for _, p in pts[: min(len(pts), 20)]
    )
    report = {
        "rank": n,
        "samples": samples,
        "closed_forms_pass": closed_ok,
        "kostant_pass": kostant_pass,
        "kostant_factorized": len(done),
        "nonvanishing_pass": nonvanishing,
        "jacobian_rank": jac["rank"],
        "jacobian_witness": jac["witness"],
        "equivariance_pass": equiv_ok,
        "fixed_points": fixed,
    }
    if n == 1:
        t = Fraction(3)
        fac = bruhat_factor(sl2_cell(t))
        report["worked_example"] = {
            "t": "3",
            "q": str(q_alpha(sl2_cell(t), 1)),
            "u_tilde_w0": [[str(x) for x in row] for row in fac[1]],
            "delta_prime": str(delta(fac[1], 1)),
        }
    report["pass"] = all([
        closed_ok, kostant_pass, nonvanishing, jac["rank"] == n, equiv_ok, all(f["pattern_ok"] for f in fixed)
    ])
    return report
