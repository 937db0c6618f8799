"""Acceptance criteria 1-11. Each test prints one PASS/FAIL line."""

import time
from fractions import Fraction as Fr
from itertools import combinations_with_replacement
from math import comb

import pytest

from cartan_toric import cartan_matrix, subdiagram
from cartan_toric import peterson as pt
from cartan_toric.cli import main
from cartan_toric.cohomology import degree2_dictionary, dimension_check, equivariant_restriction, solve_mn_constants
from cartan_toric.fan import (
    FanSigma,
    canonical_cone_rays,
    f_vector,
    intersect,
    intersect_oracle,
    is_complete,
)
from cartan_toric.lattice import inverse_nonneg, verify_cox_sequence
from cartan_toric.walls import kleiman_ample_check, wall_relation
from cartan_toric.weyl import all_subsets, classical_order, generate_weyl_group, zero_locus_partition

from .conftest import BATTERY, SMALL

ALL_TYPES = BATTERY + ["A5", "A8", "B5", "C5", "D5", "D6", "E6", "E7", "E8"]


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return emit


def test_criterion_01_fan_structure(report):
    slowest = 0.0
    ok = True
    for t in BATTERY:
        start = time.perf_counter()
        C = cartan_matrix(t)
        F = FanSigma(C)
        n = C.n
        ok &= len(F.cones) == 3**n
        ok &= all(c.dim == len(c.J) + len(c.K) for c in F.cones.values())
        ok &= f_vector(F) == [comb(n, d) * 2**d for d in range(n + 1)]
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        ok &= elapsed < 5
    report(1, ok, f"cone enumeration and f-vectors for {len(BATTERY)} types, slowest {slowest:.2f}s")


def test_criterion_02_intersection_oracle(report):
    start = time.perf_counter()
    pairs = 0
    bad = []
    for t in SMALL:
        F = FanSigma(cartan_matrix(t))
        cones = sorted(F.cones.values(), key=lambda c: c.key())
        expected = (3**F.n) * (3**F.n + 1) // 2
        count = 0
        for a, b in combinations_with_replacement(cones, 2):
            count += 1
            if sorted(intersect_oracle(a, b)) != canonical_cone_rays(intersect(a, b)):
                bad.append((t, a.key(), b.key()))
        assert count == expected
        pairs += count
    elapsed = time.perf_counter() - start
    report(2, not bad and elapsed < 60, f"{pairs} unordered cone pairs, {len(bad)} mismatches, {elapsed:.1f}s")


def test_criterion_03_completeness(report):
    ok = True
    uncovered = 0
    for t in BATTERY:
        r = is_complete(FanSigma(cartan_matrix(t)), samples=10_000, seed=2024)
        ok &= r["pass"] and not r["bad_walls"]
        uncovered += len(r["uncovered"])
    report(3, ok and uncovered == 0, f"wall 2-adjacency and 10000 samples per type, {uncovered} uncovered")


def test_criterion_04_wall_positivity_and_ampleness(report):
    ok = True
    walls = 0
    for t in BATTERY:
        F = FanSigma(cartan_matrix(t))
        for w in F.walls():
            rel = wall_relation(F, w)
            ok &= rel.x_ell > 0 and rel.y_ell > 0 and all(x >= 0 for x in rel.x.values())
            walls += 1
        ok &= kleiman_ample_check(F)["pass"]
    report(4, ok, f"{walls} wall relations positive, Kleiman check on {len(BATTERY)} types")


def test_criterion_05_cartan_inverse_nonnegative(report):
    ok = True
    count = 0
    for t in ALL_TYPES:
        C = cartan_matrix(t)
        for J in all_subsets(C.n):
            if J:
                ok &= inverse_nonneg(subdiagram(C, J))[1]
                count += 1
    report(5, ok, f"{count} sub-diagram inverses over {len(ALL_TYPES)} types")


def test_criterion_06_cohomology_dimensions(report):
    ok = True
    for t in BATTERY:
        C = cartan_matrix(t)
        r = dimension_check(C)
        expected = [comb(C.n, k) for k in range(C.n + 1)]
        ok &= r["pass"] and not r["skipped"] and len(r["routes"]) == 5
        ok &= all(v == expected for v in r["routes"].values()) and r["total"] == 2**C.n
    report(6, ok, "X/Y and X presentations, Groebner and row reduction, h-vector")


def test_criterion_07_degree_two_dictionary(report):
    ok = True
    for t in BATTERY:
        C = cartan_matrix(t)
        F = FanSigma(C, verify=False)
        full = set(range(C.n))
        for i in range(C.n):
            at_empty = equivariant_restriction(F, set(), ("w", i)).weight.to("root").coords
            at_full = equivariant_restriction(F, full, ("w", i)).weight.coords
            ok &= at_empty == tuple(Fr(int(k == i)) for k in range(C.n))
            ok &= all(x == 0 for x in at_full)
            r = solve_mn_constants(C, i, F)
            ok &= (r["m"], r["n"]) == (1, -1) and r["equations"] == 2**C.n
        ok &= degree2_dictionary(C)["pass"]
    report(7, ok, "localization at e and w_0, (m, n) = (1, -1) on all fixed points, dictionary")


def test_criterion_08_weyl_fixed_points(report):
    ok = True
    for t in BATTERY:
        C = cartan_matrix(t)
        if C.n > 4:
            continue
        for i in range(C.n):
            r = zero_locus_partition(C, i)
            ok &= r["disjoint"] and r["union_is_all"]
            ok &= len(set(r["setA"]) | set(r["setB"])) == 2**C.n
    orders = {"A2": 6, "B2": 8, "G2": 12, "A3": 24, "B3": 48, "D4": 192, "F4": 1152}
    for t, order in orders.items():
        C = cartan_matrix(t)
        ok &= len(generate_weyl_group(C)) == order == classical_order(C)
    report(8, ok, "Bruhat and root-decomposition sets partition the fixed points; group orders")


def test_criterion_09_peterson_type_a(report):
    start = time.perf_counter()
    ok = True
    for t in (Fr(3), Fr(-5, 2), Fr(7, 11)):
        u = pt.sl2_cell(t)
        ok &= pt.q_alpha(u, 1) == t**2
        ok &= pt.kostant_check(u)["delta_prime"] == [1 / t]
    samples = pt.sample_peterson_cell(2, 100, seed=2024)
    ok &= len(samples) >= 100
    C = cartan_matrix("A2")
    factored = 0
    for (a, c), u in samples:
        ok &= pt.q_alpha(u, 1) * (a + c) == a**3 and pt.q_alpha(u, 2) * (a + c) == c**3
        k = pt.kostant_check(u, C)
        if k["status"] != "skipped":
            factored += 1
            ok &= k["status"] == "pass"
        d, q = pt.section_values(u)
        ok &= all(not (x == 0 and y == 0) for x, y in zip(d, q))
    ok &= factored >= 95
    for n in (1, 2):
        for J in all_subsets(n):
            d, q = pt.section_values(pt.signed_w(n, J))
            ok &= all(not (x == 0 and y == 0) for x, y in zip(d, q))
            ok &= pt.fixed_point_image_check(n, J)
        ok &= pt.jacobian_rank_check(n, 10, seed=1)["rank"] == n
    elapsed = time.perf_counter() - start
    report(9, ok and elapsed < 30, f"SL2 and SL3 exact checks, Kostant on {factored}/100, {elapsed:.1f}s")


def test_criterion_10_cox_sequence(report):
    ok = all(verify_cox_sequence(cartan_matrix(t))["pass"] for t in BATTERY)
    report(10, ok, f"Smith normal form exactness for {len(BATTERY)} types")


def test_criterion_11_reproducible_reports(report, tmp_path, capsys):
    runs = [
        ["fan", "--type", "B3", "--seed", "17", "--samples", "2000"],
        ["cohomology", "--type", "G2"],
        ["peterson", "--rank", "2", "--seed", "17", "--samples", "100"],
    ]
    ok = True
    for k, args in enumerate(runs):
        a, b = tmp_path / f"{k}a.json", tmp_path / f"{k}b.json"
        ok &= main(args + ["--out", str(a)]) == 0
        ok &= main(args + ["--out", str(b)]) == 0
        ok &= a.read_bytes() == b.read_bytes()
    report(11, ok, f"{len(runs)} seeded reports byte-identical across two runs")
