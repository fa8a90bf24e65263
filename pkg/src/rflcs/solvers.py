"""Exact and heuristic solvers for (repetition-free) noncrossing matchings.

The exact repetition-free solver is a dynamic program over symbol subsets
S with Pareto frontiers of minimal (prefix-of-x, prefix-of-y) lengths in
which some ordering of S embeds as a common subsequence.  Running it on
the reversed sequences yields suffix-feasibility queries, from which the
canonical (lexicographically smallest) maximum witness is recovered
greedily edge by edge.  Complexity is O(2^m * n) for m symbols common to
both sides, so it is gated behind a configurable alphabet cap.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import CapacityError
from .model import (
    EMPTY_MATCHING,
    Instance,
    NoncrossingMatching,
    SolveResult,
    is_subsequence,
    matching_from_edges,
)

K_MAX_EXACT = 20
N_MAX_BRUTE = 12


# ---------------------------------------------------------------------------
# Classical LCS


def lcs_length(x: Sequence[int], y: Sequence[int]) -> SolveResult:
    """Quadratic dynamic program with witness recovery by backtracking."""
    nx, ny = len(x), len(y)
    prev = [0] * (ny + 1)
    table = [prev]
    for i in range(1, nx + 1):
        xi = x[i - 1]
        cur = [0] * (ny + 1)
        for j in range(1, ny + 1):
            if xi == y[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                a, b = prev[j], cur[j - 1]
                cur[j] = a if a >= b else b
        table.append(cur)
        prev = cur
    edges = []
    i, j = nx, ny
    while i > 0 and j > 0:
        if x[i - 1] == y[j - 1] and table[i][j] == table[i - 1][j - 1] + 1:
            edges.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    edges.reverse()
    witness = NoncrossingMatching(
        edges=tuple(edges), symbols=tuple(x[i] for i, _ in edges)
    )
    return SolveResult(
        length=table[nx][ny],
        witness=witness,
        symbol_set=frozenset(witness.symbols),
        method="lcs",
    )


# ---------------------------------------------------------------------------
# Longest increasing subsequence (patience style, O(t log t))


def lis_length(perm: Sequence[int]) -> int:
    """Length of a longest strictly increasing subsequence of distinct ints."""
    if len(set(perm)) != len(perm):
        raise ValueError("lis_length requires distinct elements")
    tails: list[int] = []
    for v in perm:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def lis_indices(perm: Sequence[int]) -> list[int]:
    """Indices of one longest strictly increasing subsequence."""
    if len(set(perm)) != len(perm):
        raise ValueError("lis_indices requires distinct elements")
    tails: list[int] = []
    tail_idx: list[int] = []
    back = [-1] * len(perm)
    for i, v in enumerate(perm):
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
            tail_idx.append(i)
        else:
            tails[pos] = v
            tail_idx[pos] = i
        back[i] = tail_idx[pos - 1] if pos > 0 else -1
    out: list[int] = []
    i = tail_idx[-1] if tail_idx else -1
    while i >= 0:
        out.append(i)
        i = back[i]
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# Degree-1 subgraph reduction


def degree_one_edges(x: Sequence[int], y: Sequence[int]) -> list[tuple[int, int, int]]:
    """Edges (i, j, symbol) of the word graph after deleting every edge
    incident to a vertex of degree > 1; sorted by i.

    A vertex has degree > 1 exactly when its symbol occurs more than once
    on the opposite side, and an x-side edge survives only if its symbol
    occurs exactly once in each sequence.
    """
    count_x: dict[int, int] = {}
    count_y: dict[int, int] = {}
    first_x: dict[int, int] = {}
    first_y: dict[int, int] = {}
    for i, c in enumerate(x):
        count_x[c] = count_x.get(c, 0) + 1
        first_x.setdefault(c, i)
    for j, c in enumerate(y):
        count_y[c] = count_y.get(c, 0) + 1
        first_y.setdefault(c, j)
    edges = [
        (first_x[c], first_y[c], c)
        for c in count_x
        if count_x[c] == 1 and count_y.get(c) == 1
    ]
    edges.sort()
    return edges


def degree_one_permutation(inst: Instance) -> list[int]:
    """Permutation induced by the degree-1 subgraph: j-ranks read in i-order."""
    edges = degree_one_edges(inst.x, inst.y)
    js = [j for _, j, _ in edges]
    rank = {j: r for r, j in enumerate(sorted(js))}
    return [rank[j] for j in js]


# ---------------------------------------------------------------------------
# Exact repetition-free solver


def _pareto_min(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Keep minimal points; result sorted by first coord asc, second desc."""
    points.sort()
    out: list[tuple[int, int]] = []
    best = None
    for a, b in points:
        if best is None or b < best:
            out.append((a, b))
            best = b
    return out


def _next_tables(seq: Sequence[int], syms: Sequence[int]) -> dict[int, list[int]]:
    """nxt[c][p] = smallest q >= p with seq[q] == c, else len(seq)."""
    n = len(seq)
    tables = {c: [n] * (n + 1) for c in syms}
    for p in range(n - 1, -1, -1):
        for tab in tables.values():
            tab[p] = tab[p + 1]
        t = tables.get(seq[p])
        if t is not None:
            t[p] = p
    return tables


class _RfEngine:
    """Subset DP over the reversed sequences plus canonical recovery."""

    def __init__(self, x: Sequence[int], y: Sequence[int]):
        self.x = list(x)
        self.y = list(y)
        self.n = len(x)
        self.syms = sorted(set(x) & set(y))
        self.m = len(self.syms)
        self.bit = {c: 1 << i for i, c in enumerate(self.syms)}
        self._frontiers: Optional[dict[int, list[tuple[int, int]]]] = None

    def frontiers(self) -> dict[int, list[tuple[int, int]]]:
        """For each symbol subset mask, the Pareto-minimal (a, b) such that
        the subset embeds in the last a symbols of x and last b of y."""
        if self._frontiers is not None:
            return self._frontiers
        n = self.n
        rx = self.x[::-1]
        ry = self.y[::-1]
        nxt_x = _next_tables(rx, self.syms)
        nxt_y = _next_tables(ry, self.syms)
        g: dict[int, list[tuple[int, int]]] = {0: [(0, 0)]}
        masks = sorted(range(1, 1 << self.m), key=lambda v: v.bit_count())
        for mask in masks:
            cand: list[tuple[int, int]] = []
            rest = mask
            while rest:
                low = rest & -rest
                rest ^= low
                sub = g.get(mask ^ low)
                if sub is None:
                    continue
                c = self.syms[low.bit_length() - 1]
                tx = nxt_x[c]
                ty = nxt_y[c]
                for a, b in sub:
                    p = tx[a]
                    q = ty[b]
                    if p < n and q < n:
                        cand.append((p + 1, q + 1))
            if cand:
                g[mask] = _pareto_min(cand)
        self._frontiers = g
        return g

    def max_length(self) -> int:
        return max((mask.bit_count() for mask in self.frontiers()), default=0)

    def canonical_edges(self) -> list[tuple[int, int]]:
        """Lexicographically smallest maximum repetition-free matching."""
        g = self.frontiers()
        total = self.max_length()
        if total == 0:
            return []
        n = self.n
        pos_y: dict[int, list[int]] = {}
        for j, c in enumerate(self.y):
            pos_y.setdefault(c, []).append(j)
        allowed = (1 << self.m) - 1
        i0 = j0 = -1
        edges: list[tuple[int, int]] = []
        all_bits = [1 << i for i in range(self.m)]
        while len(edges) < total:
            remaining = total - len(edges) - 1
            # need[c_bit]: Pareto-min suffix requirements over subsets of
            # size `remaining` drawn from allowed symbols other than c.
            need: dict[int, list[tuple[int, int]]] = {}
            avail = [b for b in all_bits if allowed & b]
            if remaining == 0:
                for b in avail:
                    need[b] = [(0, 0)]
            else:
                acc: dict[int, list[tuple[int, int]]] = {b: [] for b in avail}
                for combo in combinations(avail, remaining):
                    mask = 0
                    for b in combo:
                        mask |= b
                    fr = g.get(mask)
                    if fr is None:
                        continue
                    for b in avail:
                        if not (mask & b):
                            acc[b].extend(fr)
                for b in avail:
                    if acc[b]:
                        need[b] = _pareto_min(acc[b])
            found = False
            for i in range(i0 + 1, n):
                c = self.x[i]
                b = self.bit.get(c)
                if b is None or not (allowed & b) or b not in need:
                    continue
                ys = pos_y.get(c)
                if not ys:
                    continue
                jpos = bisect_right(ys, j0)
                if jpos == len(ys):
                    continue
                j = ys[jpos]
                fr = need[b]
                # rightmost frontier point with suffix-x requirement <= n-1-i
                hi = bisect_right(fr, (n - 1 - i, n + 1)) - 1
                if hi < 0 or fr[hi][1] > n - 1 - j:
                    continue
                edges.append((i, j))
                allowed &= ~b
                i0, j0 = i, j
                found = True
                break
            if not found:  # unreachable if the DP is consistent
                raise RuntimeError("canonical recovery failed to extend matching")
        return edges


def rflcs_exact(inst: Instance, k_max_exact: int = K_MAX_EXACT) -> SolveResult:
    """Exact repetition-free LCS with the canonical maximum witness."""
    if inst.k > k_max_exact:
        raise CapacityError(
            f"rflcs_exact requires k <= {k_max_exact} (got k={inst.k})"
        )
    engine = _RfEngine(inst.x, inst.y)
    edges = engine.canonical_edges()
    witness = matching_from_edges(inst, edges)
    return SolveResult(
        length=len(edges),
        witness=witness,
        symbol_set=frozenset(witness.symbols),
        method="exact",
    )


def canonical_matching(inst: Instance, k_max_exact: int = K_MAX_EXACT) -> NoncrossingMatching:
    """The unique minimum, under lexicographic order on sorted edge lists,
    among maximum repetition-free noncrossing matchings."""
    engine = _RfEngine(inst.x, inst.y)
    # The DP is exponential in the number of symbols common to both sides,
    # not in the nominal k, so small instances are fine at any k.
    if engine.m > k_max_exact and inst.n > N_MAX_BRUTE:
        raise CapacityError(
            f"canonical_matching requires k <= {k_max_exact} or n <= {N_MAX_BRUTE}"
        )
    return matching_from_edges(inst, engine.canonical_edges())


def rflcs_bruteforce(inst: Instance) -> SolveResult:
    """Test oracle: enumerate repetition-free subsequences of x, keep those
    that embed in y, return a maximum one."""
    if inst.n > N_MAX_BRUTE:
        raise CapacityError(f"rflcs_bruteforce requires n <= {N_MAX_BRUTE}")
    n = inst.n
    best_len = 0
    best_edges: list[tuple[int, int]] = []
    for mask in range(1 << n):
        if mask.bit_count() <= best_len:
            continue
        idx = [i for i in range(n) if mask >> i & 1]
        z = [inst.x[i] for i in idx]
        if len(set(z)) != len(z):
            continue
        if not is_subsequence(z, inst.y):
            continue
        # greedy embedding of z into y for the witness
        edges = []
        j = 0
        for i, c in zip(idx, z):
            while inst.y[j] != c:
                j += 1
            edges.append((i, j))
            j += 1
        best_len = len(z)
        best_edges = edges
    witness = matching_from_edges(inst, best_edges)
    return SolveResult(
        length=best_len,
        witness=witness,
        symbol_set=frozenset(witness.symbols),
        method="brute",
    )


# ---------------------------------------------------------------------------
# Segment-merge heuristic


@dataclass(frozen=True)
class SegmentPlan:
    """Aligned-block segmentation: b = floor(n / n_tilde) segments of size
    n_tilde, with the leftover either dropped or folded into the last block."""

    n_tilde: int
    leftover: str = "fold-into-last"

    def __post_init__(self):
        if self.n_tilde < 1:
            raise ValueError("segment size must be positive")
        if self.leftover not in ("drop", "fold-into-last"):
            raise ValueError("leftover must be 'drop' or 'fold-into-last'")

    def segments(self, n: int) -> list[tuple[int, int]]:
        b = n // self.n_tilde
        if b == 0:
            return [(0, n)] if n and self.leftover == "fold-into-last" else []
        bounds = [(i * self.n_tilde, (i + 1) * self.n_tilde) for i in range(b)]
        if self.leftover == "fold-into-last":
            bounds[-1] = (bounds[-1][0], n)
        return bounds


def segment_merge_heuristic(
    inst: Instance,
    plan: SegmentPlan,
    per_segment: str = "exact",
    k_max_exact: int = K_MAX_EXACT,
) -> SolveResult:
    """Solve aligned segments independently, concatenate, then drop all but
    the leftmost edge of every repeated symbol.

    The result is a feasible repetition-free noncrossing matching, so its
    length is a lower bound on the exact optimum.
    """
    if per_segment not in ("exact", "lis"):
        raise ValueError("per_segment must be 'exact' or 'lis'")
    edges: list[tuple[int, int]] = []
    for lo, hi in plan.segments(inst.n):
        sx = inst.x[lo:hi]
        sy = inst.y[lo:hi]
        if per_segment == "exact":
            engine = _RfEngine(sx, sy)
            if engine.m > k_max_exact:
                raise CapacityError(
                    f"segment alphabet {engine.m} exceeds k_max_exact={k_max_exact}"
                )
            seg_edges = engine.canonical_edges()
            edges.extend((lo + i, lo + j) for i, j in seg_edges)
        else:
            deg1 = degree_one_edges(sx, sy)
            keep = lis_indices([j for _, j, _ in deg1])
            edges.extend((lo + deg1[t][0], lo + deg1[t][1]) for t in keep)
    seen: set[int] = set()
    kept: list[tuple[int, int]] = []
    for i, j in edges:  # already sorted by block then i
        c = inst.x[i]
        if c in seen:
            continue
        seen.add(c)
        kept.append((i, j))
    witness = matching_from_edges(inst, kept)
    return SolveResult(
        length=len(kept),
        witness=witness,
        symbol_set=frozenset(witness.symbols),
        method="heuristic",
    )
