"""Monte Carlo harness: regime sweeps, exhaustive uniformity check, and the
tail-bound verification battery.

Determinism contract: every report is a pure function of its config and
master seed.  Each trial owns the stream (master_seed -> k index ->
trial ordinal), and results are merged in trial order, so the worker
count never changes output bytes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

import numpy as np

from .bounds import lambda_empty, bernstein_tail, coupon_tail, occupancy_tail, regime_target
from .errors import CapacityError
from .generators import gen_uniform_pair
from .rng import RngStream
from .solvers import (
    K_MAX_EXACT,
    SegmentPlan,
    _RfEngine,
    lcs_length,
    rflcs_exact,
    segment_merge_heuristic,
)
from .urns import classical_urn_empty_counts

UNIFORMITY_PAIRS_MAX = 10_000_000
FORMAT_VERSION = 1

CSV_HEADER = "regime,k,n,trials,mean_R,stderr,lower,upper,theory_target,tail_xi,tail_value"


@dataclass(frozen=True)
class SweepConfig:
    regime: int
    k_list: tuple[int, ...]
    trials: int
    master_seed: int
    rho: float = 0.0
    xi: float = 0.0
    estimator: str = "bracket"  # exact | heuristic | bracket
    n_override: Optional[int] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.estimator not in ("exact", "heuristic", "bracket"):
            raise ValueError("estimator must be exact, heuristic or bracket")
        if self.estimator == "exact" and any(k > K_MAX_EXACT for k in self.k_list):
            raise ValueError(
                f"estimator=exact requires every k <= {K_MAX_EXACT}"
            )


@dataclass(frozen=True)
class SweepRow:
    regime: int
    k: int
    n: int
    trials: int
    mean_R: float
    stderr: float
    lower: float
    upper: float
    theory_target: float
    tail_xi: float
    tail_value: float


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    format_version: int = FORMAT_VERSION

    def to_csv(self) -> str:
        def fmt(v) -> str:
            if isinstance(v, int):
                return str(v)
            return f"{v:.10g}"

        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(
                ",".join(
                    fmt(v)
                    for v in (
                        r.regime,
                        r.k,
                        r.n,
                        r.trials,
                        r.mean_R,
                        r.stderr,
                        r.lower,
                        r.upper,
                        r.theory_target,
                        r.tail_xi,
                        r.tail_value,
                    )
                )
            )
        return "\n".join(lines) + "\n"


def _sweep_trial(args: tuple[int, int, int, int, int, str]) -> tuple[int, int]:
    """One trial; returns (lower, upper) estimates of R for one instance."""
    master_seed, k_idx, trial, n, k, estimator = args
    stream = RngStream(master_seed, k_idx).substream(trial)
    inst = gen_uniform_pair(n, k, stream)
    if estimator == "exact":
        val = rflcs_exact(inst).length
        return val, val
    plan = SegmentPlan(n_tilde=math.ceil(k**0.75))
    per_segment = "exact" if k <= K_MAX_EXACT else "lis"
    lower = segment_merge_heuristic(inst, plan, per_segment=per_segment).length
    upper = min(lcs_length(inst.x, inst.y).length, k)
    return lower, upper


def run_regime_sweep(config: SweepConfig, workers: int = 1) -> SweepReport:
    """One row per k: Monte Carlo estimates of E[R] with theory overlays."""
    rows = []
    for k_idx, k in enumerate(config.k_list):
        rt = regime_target(
            config.regime, k, rho=config.rho, xi=config.xi, n=config.n_override
        )
        n = config.n_override if config.n_override is not None else rt.n
        jobs = [
            (config.master_seed, k_idx, trial, n, k, config.estimator)
            for trial in range(config.trials)
        ]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_sweep_trial, jobs, chunksize=8))
        else:
            results = [_sweep_trial(j) for j in jobs]
        lowers = np.array([r[0] for r in results], dtype=float)
        uppers = np.array([r[1] for r in results], dtype=float)
        point = lowers  # exact: lower == upper; bracket: report the floor
        stderr = float(point.std(ddof=1) / math.sqrt(len(point))) if len(point) > 1 else 0.0
        rows.append(
            SweepRow(
                regime=config.regime,
                k=k,
                n=n,
                trials=config.trials,
                mean_R=float(point.mean()),
                stderr=stderr,
                lower=float(lowers.mean()),
                upper=float(uppers.mean()),
                theory_target=rt.target,
                tail_xi=config.xi,
                tail_value=rt.tail(config.xi),
            )
        )
    return SweepReport(rows=tuple(rows))


@dataclass(frozen=True)
class SaturationStats:
    k: int
    n: int
    trials: int
    mean: float
    stderr: float


def run_fixed_k_saturation(k: int, n: int, trials: int, rng: RngStream) -> SaturationStats:
    """Mean exact R over seeded trials at fixed alphabet size."""
    if k > K_MAX_EXACT:
        raise CapacityError(f"run_fixed_k_saturation requires k <= {K_MAX_EXACT}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    vals = np.array(
        [
            rflcs_exact(gen_uniform_pair(n, k, rng.substream(t))).length
            for t in range(trials)
        ],
        dtype=float,
    )
    stderr = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SaturationStats(k=k, n=n, trials=trials, mean=float(vals.mean()), stderr=stderr)


@dataclass(frozen=True)
class UniformityReport:
    """Exact conditional symbol-set counts of the canonical matching."""

    n: int
    k: int
    total_pairs: int
    size_counts: dict[int, int] = field(default_factory=dict)
    subset_counts: dict[int, dict[frozenset, int]] = field(default_factory=dict)
    uniform: bool = True


def uniformity_test_exhaustive(n: int, k: int) -> UniformityReport:
    """Enumerate all k^(2n) pairs and tally canonical symbol sets per size.

    Uniformity is asserted by integer-count equality: for every size l
    with at least one instance, every l-subset of [0, k) must occur
    exactly the same number of times.
    """
    total = k ** (2 * n)
    if total > UNIFORMITY_PAIRS_MAX:
        raise CapacityError(
            f"uniformity_test_exhaustive limited to {UNIFORMITY_PAIRS_MAX} pairs "
            f"(requested {total})"
        )
    size_counts: dict[int, int] = {}
    subset_counts: dict[int, dict[frozenset, int]] = {}
    for x in product(range(k), repeat=n):
        for y in product(range(k), repeat=n):
            engine = _RfEngine(x, y)
            edges = engine.canonical_edges()
            l = len(edges)
            size_counts[l] = size_counts.get(l, 0) + 1
            if l == 0:
                continue
            syms = frozenset(x[i] for i, _ in edges)
            bucket = subset_counts.setdefault(l, {})
            bucket[syms] = bucket.get(syms, 0) + 1
    uniform = True
    for l, bucket in subset_counts.items():
        if len(bucket) != math.comb(k, l) or len(set(bucket.values())) != 1:
            uniform = False
    return UniformityReport(
        n=n,
        k=k,
        total_pairs=total,
        size_counts=size_counts,
        subset_counts=subset_counts,
        uniform=uniform,
    )


@dataclass(frozen=True)
class TailboundItem:
    name: str
    observed: float
    bound: float
    slack: float
    passed: bool


@dataclass(frozen=True)
class TailboundReport:
    items: tuple[TailboundItem, ...]

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)


def _proportion_se(p_hat: float, bound: float, trials: int) -> float:
    p = min(max(p_hat, bound), 1.0)
    return math.sqrt(p * (1.0 - p) / trials)


def run_tailbound_suite(
    rng: RngStream, trials: int = 100_000, solver_trials: int = 30
) -> TailboundReport:
    """Fixed battery of Monte Carlo vs closed-form bound comparisons.

    Occupancy items use `trials` urn samples; the matching-length item
    uses `solver_trials` heuristic solves.  Statistical slack is 3
    standard errors throughout (the coupon item keeps the fixed 0.02
    budget, i.e. the bound 0.01 doubled).
    """
    items: list[TailboundItem] = []

    # Bernstein-style upper tail at k=50, s=50, a in {2, 4, 6}.
    k1, s1 = 50, 50
    lam = lambda_empty(k1, s1)
    y1 = classical_urn_empty_counts(k1, s1, trials, rng.substream(1))
    for a in (2.0, 4.0, 6.0):
        p_hat = float(np.mean(y1 >= lam + a))
        bound = bernstein_tail(k1, s1, a)
        slack = 3.0 * _proportion_se(p_hat, bound, trials)
        items.append(
            TailboundItem(
                name=f"bernstein_k{k1}_s{s1}_a{a:g}",
                observed=p_hat,
                bound=bound,
                slack=slack,
                passed=p_hat <= bound + slack,
            )
        )

    # Coupon-collector zero-empty-urn tail at k=100, xi=1.
    k2, xi2 = 100, 1.0
    s2, bound2 = coupon_tail(k2, xi2)
    y2 = classical_urn_empty_counts(k2, s2, trials, rng.substream(2))
    p_hat2 = float(np.mean(y2 != 0))
    items.append(
        TailboundItem(
            name=f"coupon_k{k2}_xi{xi2:g}",
            observed=p_hat2,
            bound=bound2,
            slack=bound2,  # fixed budget: bound + bound = 0.02
            passed=p_hat2 <= 2.0 * bound2,
        )
    )

    # Collision lower tail at k=10^4, s=50, a=10.
    k3, s3, a3 = 10_000, 50, 10.0
    y3 = classical_urn_empty_counts(k3, s3, trials, rng.substream(3))
    p_hat3 = float(np.mean((k3 - y3) <= s3 - a3))
    bound3 = occupancy_tail(k3, s3, a3)
    slack3 = 3.0 * _proportion_se(p_hat3, bound3, trials)
    items.append(
        TailboundItem(
            name=f"occupancy_k{k3}_s{s3}_a{a3:g}",
            observed=p_hat3,
            bound=bound3,
            slack=slack3,
            passed=p_hat3 <= bound3 + slack3,
        )
    )

    # Small-growth regime lower tail via the heuristic lower estimate.
    k4, n4, xi4 = 400, 800, 0.5
    rt = regime_target(1, k4, n=n4)
    threshold = (1.0 - xi4) * rt.target
    plan = SegmentPlan(n_tilde=math.ceil(k4**0.75))
    below = 0
    for t in range(solver_trials):
        inst = gen_uniform_pair(n4, k4, rng.substream(4).substream(t))
        res = segment_merge_heuristic(inst, plan, per_segment="lis")
        if res.length <= threshold:
            below += 1
    p_hat4 = below / solver_trials
    bound4 = rt.tail(xi4)
    slack4 = 3.0 * _proportion_se(p_hat4, bound4, solver_trials)
    items.append(
        TailboundItem(
            name=f"regime1_k{k4}_n{n4}_xi{xi4:g}",
            observed=p_hat4,
            bound=bound4,
            slack=slack4,
            passed=p_hat4 <= bound4 + slack4,
        )
    )

    return TailboundReport(items=tuple(items))
