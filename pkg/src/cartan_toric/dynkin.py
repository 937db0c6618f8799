"""Cartan matrix tables for the finite Dynkin types.

This is the one place where orientation conventions live. Entries follow
``c[i][j] = <alpha_i, alpha_j^vee>`` with Bourbaki node numbering
(0-based here):

* ``B_n``: nodes 1..n-1 long, node n short, so ``c[n-2][n-1] = -2``.
* ``C_n``: nodes 1..n-1 short, node n long, so ``c[n-1][n-2] = -2``.
* ``F_4``: nodes 1,2 long, nodes 3,4 short, so ``c[1][2] = -2``.
* ``G_2``: node 1 short, node 2 long, so ``c[1][0] = -3``.
* ``D_n``: nodes n-1 and n both attached to n-2.
* ``E_n``: chain 1-3-4-5-...-n with node 2 attached to node 4.

With this convention ``B_n`` and ``C_n`` matrices are transposes of each
other.
"""

from __future__ import annotations

import re

FAMILIES = "ABCDEFG"

_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


class DynkinTypeError(ValueError):
    """An invalid (family, rank) component or an unparsable type string."""


def validate_component(family: str, rank: int) -> None:
    family = family.upper()
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }.get(family)
    if not ok:
        raise DynkinTypeError(f"invalid Dynkin component {family}{rank}")


def _edges(n: int, pairs) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in pairs:
        c[i][j] = c[j][i] = -1
    return c


def component_matrix(family: str, rank: int) -> list[list[int]]:
    family = family.upper()
    validate_component(family, rank)
    n = rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return _edges(n, chain)
    if family == "B":
        c = _edges(n, chain)
        c[n - 2][n - 1] = -2
        return c
    if family == "C":
        c = _edges(n, chain)
        c[n - 1][n - 2] = -2
        return c
    if family == "D":
        if n == 3:  # D3 = A3 with the middle node first in the chain
            return _edges(3, [(0, 1), (0, 2)])
        return _edges(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if family == "E":
        pairs = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return _edges(n, pairs)
    if family == "F":
        c = _edges(4, chain)
        c[1][2] = -2
        return c
    if family == "G":
        return [[2, -1], [-3, 2]]
    raise AssertionError(family)


def parse_type(spec: str) -> list[tuple[str, int]]:
    """Parse ``"A3"`` or ``"b2, G2"`` into ``[("B", 2), ("G", 2)]``."""
    if not spec or not spec.strip():
        raise DynkinTypeError("empty Dynkin type")
    out = []
    for part in spec.split(","):
        m = _TYPE_RE.match(part)
        if not m:
            raise DynkinTypeError(f"cannot parse Dynkin component {part.strip()!r}")
        family, rank = m.group(1).upper(), int(m.group(2))
        validate_component(family, rank)
        out.append((family, rank))
    return out


def format_type(components) -> str:
    return ",".join(f"{f}{r}" for f, r in components)
