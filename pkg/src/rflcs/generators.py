"""Seeded instance generators: uniform random pairs and planted pairs.

Both generators are pure functions of (parameters, stream): the stream's
derived seed is recorded on the instance for provenance.
"""

from __future__ import annotations

from .model import Instance, PlantedCertificate
from .rng import RngStream


def gen_uniform_pair(n: int, k: int, rng: RngStream) -> Instance:
    """Two sequences of n symbols, each uniform and independent over [0, k)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
    g = rng.generator()
    x = tuple(int(c) for c in g.integers(0, k, size=n))
    y = tuple(int(c) for c in g.integers(0, k, size=n))
    return Instance(n=n, k=k, x=x, y=y, seed=rng.seed)


def gen_planted_pair(n: int, k: int, l: int, rng: RngStream) -> Instance:
    """Uniform pair with a repetition-free sequence of length l planted in both.

    z is a uniform l-subset of [0, k) in uniform order; in each side, l
    distinct positions are chosen uniformly at random, sorted, and
    overwritten with z in order.  The certificate is recorded, so the
    instance's repetition-free LCS is at least l.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
    if not (0 <= l <= min(n, k)):
        raise ValueError("planted length must satisfy 0 <= l <= min(n, k)")
    g = rng.generator()
    x = [int(c) for c in g.integers(0, k, size=n)]
    y = [int(c) for c in g.integers(0, k, size=n)]
    z = tuple(int(c) for c in g.permutation(k)[:l])
    pos_x = tuple(sorted(int(p) for p in g.choice(n, size=l, replace=False))) if l else ()
    pos_y = tuple(sorted(int(p) for p in g.choice(n, size=l, replace=False))) if l else ()
    for i, c in enumerate(z):
        x[pos_x[i]] = c
        y[pos_y[i]] = c
    cert = PlantedCertificate(z=z, positions_x=pos_x, positions_y=pos_y)
    return Instance(n=n, k=k, x=tuple(x), y=tuple(y), seed=rng.seed, planted=cert)


def word_graph_edges(inst: Instance) -> list[tuple[int, int]]:
    """All pairs (i, j) with x[i] = y[j], sorted lexicographically."""
    pos_y: dict[int, list[int]] = {}
    for j, c in enumerate(inst.y):
        pos_y.setdefault(c, []).append(j)
    out: list[tuple[int, int]] = []
    for i, c in enumerate(inst.x):
        for j in pos_y.get(c, ()):
            out.append((i, j))
    return out
