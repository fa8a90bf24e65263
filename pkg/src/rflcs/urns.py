"""Grouped and classical urn occupancy models.

The classical (k, s) model throws s balls independently and uniformly
into k urns; the grouped (k, s_vec) model places, for each group i, one
ball into every urn of a uniform s_i-subset.  Both track the number of
urns left empty.  Exact distributions are computed in integer arithmetic
(inclusion-exclusion for the classical model, full enumeration over
subset combinations for the grouped one), so they carry no floating
cancellation error and serve as zero-tolerance oracles for the
dominance check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import CapacityError
from .rng import RngStream

CLASSICAL_EXACT_K_MAX = 30
CLASSICAL_EXACT_S_MAX = 200
GROUPED_EXACT_COMBOS_MAX = 10_000_000
_MC_CHUNK = 50_000_000  # max draws held in memory at once


@dataclass(frozen=True)
class GroupedUrnSpec:
    k: int
    s_vec: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if any(si < 0 or si > self.k for si in self.s_vec):
            raise ValueError("each group size must lie in [0, k]")

    @property
    def s(self) -> int:
        return sum(self.s_vec)

    @property
    def b(self) -> int:
        return len(self.s_vec)


@dataclass(frozen=True)
class OccupancySample:
    empty_count: int
    model: str  # "grouped" | "classical"


def classical_urn_sample(k: int, s: int, rng: RngStream) -> OccupancySample:
    """One draw of the empty-urn count Y for the classical (k, s) model."""
    if k < 1 or s < 0:
        raise ValueError("require k >= 1 and s >= 0")
    g = rng.generator()
    counts = np.bincount(g.integers(0, k, size=s), minlength=k)
    return OccupancySample(empty_count=int(np.sum(counts == 0)), model="classical")


def classical_urn_empty_counts(k: int, s: int, trials: int, rng: RngStream) -> np.ndarray:
    """Vectorized batch of Y draws; chunked to bound memory."""
    if k < 1 or s < 0 or trials < 1:
        raise ValueError("require k >= 1, s >= 0, trials >= 1")
    g = rng.generator()
    if s == 0:
        return np.full(trials, k, dtype=np.int64)
    out = np.empty(trials, dtype=np.int64)
    chunk = max(1, _MC_CHUNK // max(s, 1))
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        draws = g.integers(0, k, size=(m, s))
        draws.sort(axis=1)
        distinct = 1 + np.count_nonzero(np.diff(draws, axis=1), axis=1)
        out[done : done + m] = k - distinct
        done += m
    return out


def grouped_urn_sample(spec: GroupedUrnSpec, rng: RngStream) -> OccupancySample:
    """One draw of the empty-urn count X for the grouped (k, s_vec) model."""
    g = rng.generator()
    hit = np.zeros(spec.k, dtype=bool)
    for si in spec.s_vec:
        if si:
            hit[g.choice(spec.k, size=si, replace=False)] = True
    return OccupancySample(empty_count=int(spec.k - hit.sum()), model="grouped")


def grouped_urn_empty_counts(spec: GroupedUrnSpec, trials: int, rng: RngStream) -> np.ndarray:
    """Vectorized batch of X draws.

    Per group, a uniform s_i-subset per trial is obtained by ranking i.i.d.
    uniforms over the k urns, which is exchangeable hence uniform over
    subsets.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    g = rng.generator()
    out = np.empty(trials, dtype=np.int64)
    chunk = max(1, _MC_CHUNK // max(spec.k * max(spec.b, 1), 1))
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        hit = np.zeros((m, spec.k), dtype=bool)
        for si in spec.s_vec:
            if si == 0:
                continue
            keys = g.random((m, spec.k))
            idx = np.argpartition(keys, si - 1, axis=1)[:, :si]
            np.put_along_axis(hit, idx, True, axis=1)
        out[done : done + m] = spec.k - hit.sum(axis=1)
        done += m
    return out


def classical_urn_exact(k: int, s: int) -> list[float]:
    """Exact distribution of Y by inclusion-exclusion, integer arithmetic.

    P(Y = m) = C(k,m) * sum_j (-1)^j C(k-m,j) ((k-m-j)/k)^s.
    """
    if k < 1 or s < 0:
        raise ValueError("require k >= 1 and s >= 0")
    if k > CLASSICAL_EXACT_K_MAX or s > CLASSICAL_EXACT_S_MAX:
        raise CapacityError(
            f"classical_urn_exact limited to k <= {CLASSICAL_EXACT_K_MAX}, "
            f"s <= {CLASSICAL_EXACT_S_MAX}"
        )
    denom = k**s
    probs = []
    for m in range(k + 1):
        num = 0
        for j in range(k - m + 1):
            term = math.comb(k - m, j) * (k - m - j) ** s
            num += -term if j % 2 else term
        probs.append(math.comb(k, m) * num / denom)
    return probs


def grouped_urn_exact(spec: GroupedUrnSpec) -> list[float]:
    """Exact distribution of X by enumerating all subset combinations."""
    total = 1
    for si in spec.s_vec:
        total *= math.comb(spec.k, si)
    if total > GROUPED_EXACT_COMBOS_MAX:
        raise CapacityError(
            f"grouped_urn_exact limited to {GROUPED_EXACT_COMBOS_MAX} combinations "
            f"(requested {total})"
        )
    masks_per_group = []
    for si in spec.s_vec:
        masks = []
        for combo in combinations(range(spec.k), si):
            m = 0
            for u in combo:
                m |= 1 << u
            masks.append(m)
        masks_per_group.append(masks)
    counts = [0] * (spec.k + 1)
    for choice in product(*masks_per_group):
        union = 0
        for m in choice:
            union |= m
        counts[spec.k - union.bit_count()] += 1
    return [c / total for c in counts]


def survival_from_pmf(pmf) -> np.ndarray:
    """S(t) = P(value >= t) for t = 0..k from a pmf over 0..k."""
    pmf = np.asarray(pmf, dtype=float)
    return np.cumsum(pmf[::-1])[::-1]


def survival_from_samples(samples, k: int) -> np.ndarray:
    """Empirical S(t) = P(value >= t) for t = 0..k."""
    samples = np.asarray(samples)
    pmf = np.bincount(samples.astype(np.int64), minlength=k + 1) / len(samples)
    return survival_from_pmf(pmf)


@dataclass(frozen=True)
class DominanceReport:
    """max_t [S_X(t) - S_Y(t)] with the threshold used to flag a violation."""

    k: int
    s_vec: tuple[int, ...]
    exact: bool
    margin: float
    threshold: float
    violation: bool
    trials: int = 0


def dominance_check(spec: GroupedUrnSpec, trials: int, rng: RngStream) -> DominanceReport:
    """Compare survival functions of X (grouped) and Y (classical, same s).

    Exact enumeration is used when both exact routines are in capacity;
    otherwise Monte Carlo with a 4-combined-standard-error flag.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    exact_ok = True
    try:
        px = grouped_urn_exact(spec)
        py = classical_urn_exact(spec.k, spec.s)
    except CapacityError:
        exact_ok = False
    if exact_ok:
        sx = survival_from_pmf(px)
        sy = survival_from_pmf(py)
        margin = float(np.max(sx - sy))
        return DominanceReport(
            k=spec.k,
            s_vec=spec.s_vec,
            exact=True,
            margin=margin,
            threshold=0.0,
            violation=margin > 0.0,
        )
    xs = grouped_urn_empty_counts(spec, trials, rng.substream(0))
    ys = classical_urn_empty_counts(spec.k, spec.s, trials, rng.substream(1))
    sx = survival_from_samples(xs, spec.k)
    sy = survival_from_samples(ys, spec.k)
    diff = sx - sy
    t_star = int(np.argmax(diff))
    margin = float(diff[t_star])
    se = math.sqrt(
        sx[t_star] * (1 - sx[t_star]) / trials + sy[t_star] * (1 - sy[t_star]) / trials
    )
    threshold = 4.0 * se
    return DominanceReport(
        k=spec.k,
        s_vec=spec.s_vec,
        exact=False,
        margin=margin,
        threshold=threshold,
        violation=margin > threshold,
        trials=trials,
    )
