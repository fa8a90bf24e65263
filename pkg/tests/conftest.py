"""Shared test helpers: brute-force oracles kept independent of the
implementation paths they check."""

import json
import pathlib

import pytest

from rflcs.model import Instance, is_subsequence

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def pilot():
    return json.loads((FIXTURES / "pilot.json").read_text())


def exhaustive_lcs(x, y) -> int:
    """LCS length by enumerating every subsequence of x (n <= ~12)."""
    n = len(x)
    best = 0
    for mask in range(1 << n):
        if mask.bit_count() <= best:
            continue
        z = [x[i] for i in range(n) if mask >> i & 1]
        if is_subsequence(z, y):
            best = len(z)
    return best


def exhaustive_rflcs(x, y) -> int:
    """Repetition-free LCS length by enumeration (n <= ~12)."""
    n = len(x)
    best = 0
    for mask in range(1 << n):
        if mask.bit_count() <= best:
            continue
        z = [x[i] for i in range(n) if mask >> i & 1]
        if len(set(z)) == len(z) and is_subsequence(z, y):
            best = len(z)
    return best


def enumerate_canonical(inst: Instance):
    """All maximum repetition-free noncrossing matchings, minimized under
    lexicographic order on the sorted edge list.  Returns (length, edges)."""
    n = inst.n
    best = [0, None]

    def rec(i0, j0, used, edges):
        le = len(edges)
        if le > best[0] or (le == best[0] and (best[1] is None or tuple(edges) < best[1])):
            best[0] = le
            best[1] = tuple(edges)
        for i in range(i0 + 1, n):
            c = inst.x[i]
            if c in used:
                continue
            for j in range(j0 + 1, n):
                if inst.y[j] == c:
                    rec(i, j, used | {c}, edges + [(i, j)])

    rec(-1, -1, set(), [])
    return best[0], best[1]
