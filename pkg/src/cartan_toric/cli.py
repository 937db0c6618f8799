"""Command-line driver: every verification as a subcommand with a JSON report.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error or guard.
Guarded checks appear in the report with status "skipped" and a reason.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from . import __version__
from . import cohomology, fan, peterson, walls, weyl
from .dynkin import DynkinTypeError
from .lattice import CartanMatrix, cartan_matrix, inverse_nonneg, subdiagram, verify_cox_sequence

SCHEMA = 1
ORACLE_CLI_MAX_RANK = 3  # all cone pairs: 3^n (3^n + 1) / 2 double-description runs
DEFAULT_SAMPLES = {"fan": 10000, "peterson": 100}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    type_spec: str | None = None
    rank: int | None = None
    seed: int = 0
    samples: int | None = None
    numeric: bool = False
    out: str | None = None
    fmt: str = "json"

    def sample_count(self) -> int:
        return self.samples if self.samples is not None else DEFAULT_SAMPLES.get(self.command, 100)


def _ok(flag: bool, **extra) -> dict:
    return {"status": "pass" if flag else "fail", **extra}


def _skip(reason: str) -> dict:
    return {"status": "skipped", "reason": reason}


def _cartan(cfg: RunConfig) -> CartanMatrix:
    if not cfg.type_spec:
        raise UsageError("--type is required")
    try:
        return cartan_matrix(cfg.type_spec)
    except DynkinTypeError as e:
        raise UsageError(str(e)) from e


def _labels(S) -> list[int]:
    return [i + 1 for i in sorted(S)]


# -- fan ----------------------------------------------------------------------------------


def _enumeration(F: fan.FanSigma) -> dict:
    n = F.n
    f = fan.f_vector(F)
    expected = [comb(n, d) * 2**d for d in range(n + 1)]
    dims_ok = all(c.dim == len(c.J) + len(c.K) for c in F.cones.values())
    return _ok(f == expected and dims_ok and len(F.cones) == 3**n, f_vector=f, expected=expected,
               cones=len(F.cones))


def _oracle(F: fan.FanSigma) -> dict:
    if F.n > ORACLE_CLI_MAX_RANK:
        return _skip(f"rank {F.n} exceeds the all-pairs oracle guard {ORACLE_CLI_MAX_RANK}; formula path used")
    cones = sorted(F.cones.values(), key=lambda c: c.key())
    mismatches = []
    pairs = 0
    for a, b in combinations_with_replacement(cones, 2):
        pairs += 1
        got = sorted(fan.intersect_oracle(a, b))
        want = sorted(fan.canonical_cone_rays(fan.intersect(a, b)))
        if got != want:
            mismatches.append({"first": a.key(), "second": b.key(), "oracle": got, "formula": want})
    return _ok(not mismatches, pairs=pairs, mismatches=mismatches[:5])


def _cartan_inverses(C: CartanMatrix) -> dict:
    bad = []
    count = 0
    for J in weyl.all_subsets(C.n):
        if not J:
            continue
        count += 1
        _, ok = inverse_nonneg(subdiagram(C, J))
        if not ok:
            bad.append(_labels(J))
    return _ok(not bad, subdiagrams=count, negative=bad)


def _primitive(F: fan.FanSigma) -> dict:
    if F.n > fan.ORACLE_MAX_RANK:
        return _skip(f"rank {F.n} exceeds the brute-force guard {fan.ORACLE_MAX_RANK}")
    found = fan.primitive_collections(F)
    expected = {frozenset({("a", i), ("w", i)}) for i in range(F.n)}
    listed = sorted(sorted(fan.ray_name(*r) for r in S) for S in found)
    return _ok(set(found) == expected, collections=listed)


def fan_report(C: CartanMatrix, samples: int, seed: int) -> dict:
    F = fan.FanSigma(C)
    complete = fan.is_complete(F, samples=samples, seed=seed)
    kleiman = walls.kleiman_ample_check(F)
    cox = verify_cox_sequence(C)
    checks = {
        "enumeration": _enumeration(F),
        "cox_sequence": _ok(cox["pass"], divisors_first=cox["divisors_first"],
                            divisors_second=cox["divisors_second"]),
        "cartan_inverse_nonneg": _cartan_inverses(C),
        "intersection_oracle": _oracle(F),
        "completeness": _ok(complete["pass"], walls_checked=complete["walls_checked"],
                            bad_walls=complete["bad_walls"], samples=samples, uncovered=complete["uncovered"]),
        "wall_positivity": _ok(kleiman["wall_positivity"], walls=kleiman["walls"]),
        "kleiman": _ok(kleiman["pass"], failures=kleiman["failures"]),
        "primitive_collections": _primitive(F),
    }
    return {"type": C.label, "rank": C.n, "f_vector": fan.f_vector(F), "h_vector": fan.h_vector(F),
            "seed": seed, "checks": checks}


# -- weyl ---------------------------------------------------------------------------------


def weyl_report(C: CartanMatrix) -> dict:
    checks = {}
    try:
        order = len(weyl.generate_weyl_group(C))
        checks["group_order"] = _ok(order == weyl.classical_order(C), order=order,
                                    classical=weyl.classical_order(C))
    except weyl.GuardError as e:
        checks["group_order"] = _skip(str(e))
    bad = [_labels(J) for J in weyl.all_subsets(C.n)
           if not all(weyl.longest_element_properties(C, J).values())]
    checks["longest_elements"] = _ok(not bad, failures=bad)
    fixed = weyl.fixed_point_set(C)
    parts = []
    ok = True
    for i in range(C.n):
        r = weyl.zero_locus_partition(C, i, fixed)
        good = r["disjoint"] and r["union_is_all"] and r["setA_is_i_in_J"] and r["setB_is_i_not_in_J"]
        ok &= good
        parts.append({"i": i + 1, "setA": len(r["setA"]), "setB": len(r["setB"]), "ok": good})
    checks["fixed_point_partition"] = _ok(ok, per_index=parts)
    return {"type": C.label, "rank": C.n, "star": [i + 1 for i in weyl.star_involution(C)], "checks": checks}


# -- cohomology ---------------------------------------------------------------------------


def cohomology_cli_report(C: CartanMatrix) -> dict:
    r = cohomology.cohomology_report(C)
    checks = {
        "dimensions": _ok(r["dims_pass"], routes=r["routes"]),
        "presentations_agree": _ok(r["presentations_agree"]),
        "vanishing": _ok(r["vanishing"]),
        "dictionary": _ok(r["dictionary_pass"]),
        "mn_constants": _ok(r["mn_pass"], mn=r["mn"]),
    }
    for s in r["skipped"]:
        checks[s["check"]] = _skip(s["reason"])
    return {"type": C.label, "rank": C.n, "graded_dims": r["graded_dims"], "total": r["total"],
            "cohomological_degrees": r["cohomological_degrees"], "dictionary": r["dictionary"],
            "mn": r["mn"], "checks": checks}


# -- peterson -----------------------------------------------------------------------------


def peterson_cli_report(cfg: RunConfig) -> dict:
    n = cfg.rank
    if n is None:
        raise UsageError("--rank is required")
    samples = cfg.sample_count()
    if n in peterson.EXACT_RANKS:
        r = peterson.peterson_report(n, samples, cfg.seed)
        checks = {
            "closed_forms": _ok(r["closed_forms_pass"]),
            "kostant": _ok(r["kostant_pass"], factorized=r["kostant_factorized"]),
            "nonvanishing": _ok(r["nonvanishing_pass"]),
            "jacobian_rank": _ok(r["jacobian_rank"] == n, rank=r["jacobian_rank"]),
            "equivariance": _ok(r["equivariance_pass"]),
            "fixed_points": _ok(all(f["pattern_ok"] for f in r["fixed_points"])),
            "numeric_sl4": _skip("rank is handled exactly"),
        }
        out = {k: r[k] for k in ("rank", "samples", "kostant_pass", "nonvanishing_pass", "jacobian_rank",
                                 "fixed_points")}
        if "worked_example" in r:
            out["worked_example"] = r["worked_example"]
        out["seed"] = cfg.seed
        out["checks"] = checks
        return out
    if n == peterson.NUMERIC_RANK:
        if not cfg.numeric:
            raise UsageError("rank 3 needs --numeric (floating-point Newton sampling)")
        r = peterson.sl4_numeric_check(samples, cfg.seed)
        fixed = [{"J": _labels(J), "pattern_ok": peterson.fixed_point_image_check(n, J)}
                 for J in weyl.all_subsets(n)]
        return {
            "rank": n, "samples": samples, "seed": cfg.seed, "numeric": True,
            "kostant_pass": r["pass"], "fixed_points": fixed,
            "checks": {
                "numeric_kostant": _ok(r["pass"], points=r["points"], newton_skipped=r["newton_skipped"]),
                "fixed_points": _ok(all(f["pattern_ok"] for f in fixed)),
                "exact_sampling": _skip("no exact parametrization of the rank-3 cell"),
            },
        }
    raise UsageError(f"peterson supports rank 1 or 2 (exact) and 3 with --numeric, not {n}")


def degree_report(cfg: RunConfig) -> dict:
    """Exploratory: size of a generic fiber of the cell over the q' coordinates. Nothing asserted."""
    n = cfg.rank
    if n not in peterson.EXACT_RANKS:
        raise UsageError("fiber counting is available for rank 1 or 2")
    import random

    rng = random.Random(cfg.seed)
    targets = [[peterson.random_rational(rng) or Fraction(1) for _ in range(n)] for _ in range(3)]
    counts = [peterson.cell_fiber_count(n, [float(y) for y in t]) for t in targets]
    return {"rank": n, "seed": cfg.seed, "exploratory": True,
            "fibers": [{"target": [str(y) for y in t], "points": c} for t, c in zip(targets, counts)],
            "checks": {"degree": _skip("exploratory: no value is asserted")}}


# -- output -------------------------------------------------------------------------------


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"


def to_text(report: dict) -> str:
    head = [f"{k}: {report[k]}" for k in ("command", "type", "rank", "f_vector", "graded_dims", "worked_example")
            if k in report]
    lines = head + [f"{name}: {c['status'].upper()}" + (f" ({c['reason']})" if "reason" in c else "")
                    for name, c in sorted(report.get("checks", {}).items())]
    lines.append(f"result: {'PASS' if report['pass'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Run one subcommand; returns (exit code, rendered output)."""
    if cfg.command == "plot":
        C = _cartan(cfg)
        if C.n != 2:
            raise UsageError(f"plot needs a rank-2 type, got rank {C.n}")
        return 0, fan.fan_svg(fan.FanSigma(C))
    if cfg.fmt == "svg":
        raise UsageError("--format svg is only available for plot")
    if cfg.command == "fan":
        report = fan_report(_cartan(cfg), cfg.sample_count(), cfg.seed)
    elif cfg.command in ("coh", "cohomology"):
        report = cohomology_cli_report(_cartan(cfg))
    elif cfg.command == "weyl":
        report = weyl_report(_cartan(cfg))
    elif cfg.command == "peterson":
        report = peterson_cli_report(cfg)
    elif cfg.command == "degree":
        report = degree_report(cfg)
    else:
        raise UsageError(f"unknown command {cfg.command!r}")
    report["schema"] = SCHEMA
    report["command"] = "cohomology" if cfg.command == "coh" else cfg.command
    report["pass"] = all(c["status"] != "fail" for c in report["checks"].values())
    text = to_text(report) if cfg.fmt == "text" else to_json(report)
    return (0 if report["pass"] else 1), text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cartan-toric", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, typed: bool, ranked: bool):
        if typed:
            sp.add_argument("--type", dest="type_spec", help="Dynkin type, e.g. A3 or B2,G2")
        if ranked:
            sp.add_argument("--rank", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int)
        sp.add_argument("--numeric", action="store_true")
        sp.add_argument("--out")
        sp.add_argument("--format", dest="fmt", choices=("json", "text", "svg"), default="json")

    common(sub.add_parser("fan", help="cones, oracle, completeness, walls, Kleiman"), True, False)
    for name in ("cohomology", "coh"):
        common(sub.add_parser(name, help="graded dimensions, dictionary, (m, n) constants"), True, False)
    common(sub.add_parser("weyl", help="Weyl group order and fixed-point combinatorics"), True, False)
    common(sub.add_parser("peterson", help="type A Peterson cell checks"), False, True)
    common(sub.add_parser("degree", help="exploratory fiber count of the Peterson cell"), False, True)
    common(sub.add_parser("plot", help="SVG of a rank-2 fan"), True, False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    fields.setdefault("type_spec", None)
    cfg = RunConfig(**fields)
    if cfg.samples is not None and cfg.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    try:
        code, text = run(cfg)
    except (UsageError, fan.GuardError, weyl.GuardError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(text, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
