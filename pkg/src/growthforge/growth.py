"""Cayley ball enumeration and growth-rate bounds."""
from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetExceeded, EmptyReport, RateInconsistency
from .groups import GroupSpec, canonical_encode, element_compose

DEFAULT_BUDGET = 5_000_000
THREADS_ENV = "GROWTHFORGE_THREADS"


@dataclass
class GrowthReport:
    ball_sizes: list
    elements_visited: int = 0
    wall_time: float = 0.0
    complete: bool = True
    witness_lower_bound: float | None = None
    witness_length: int | None = None

    @property
    def radii(self):
        return list(range(len(self.ball_sizes)))

    @property
    def nth_root_upper_bounds(self):
        return [None] + [b ** (1.0 / n) for n, b in enumerate(self.ball_sizes) if n > 0]

    @property
    def sphere_sizes(self):
        b = self.ball_sizes
        return [b[0]] + [b[n] - b[n - 1] for n in range(1, len(b))]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "ball_size", "nth_root"])
        for n, (b, root) in enumerate(zip(self.ball_sizes, self.nth_root_upper_bounds)):
            w.writerow([n, b, "" if root is None else format_sig(root)])
        return buf.getvalue()


@dataclass(frozen=True)
class RateBounds:
    upper: float
    lower: float
    upper_radius: int
    witness_length: int | None = None


def format_sig(x: float, digits: int = 6) -> str:
    return f"{x:.{digits}g}"


def thread_count() -> int:
    try:
        return max(0, int(os.environ.get(THREADS_ENV, "0")))
    except ValueError:
        return 0


def _expand(chunk, multipliers):
    out = []
    for g in chunk:
        for s in multipliers:
            h = element_compose(g, s)
            out.append((canonical_encode(h), h))
    return out


def enumerate_ball(spec, generators=None, radius: int = 0, budget: int = DEFAULT_BUDGET,
                   threads: int | None = None) -> GrowthReport:
    """Sizes of the balls of radius ``0..radius`` in the Cayley graph.

    Breadth-first closure under right multiplication by ``S u S^-1`` with
    deduplication on canonical encodings.  Raises BudgetExceeded carrying the
    report up to the last completed radius once more than ``budget``
    elements have been visited.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    gens = generators if generators is not None else spec.generators
    if threads is None:
        threads = thread_count()
    start = time.perf_counter()
    multipliers = [g for _, g in gens.symmetric()]
    e = gens.identity()
    visited = {canonical_encode(e)}
    frontier = [e]
    sizes = [1]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for n in range(1, radius + 1):
            if pool is None:
                candidates = _expand(frontier, multipliers)
            else:
                size = max(1, -(-len(frontier) // threads))
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                # map preserves chunk order, so insertion order is deterministic
                candidates = [c for part in pool.map(_expand, chunks, [multipliers] * len(chunks))
                              for c in part]
            new = []
            for key, h in candidates:
                if key not in visited:
                    visited.add(key)
                    new.append(h)
                    if len(visited) > budget:
                        report = GrowthReport(sizes, len(visited), time.perf_counter() - start,
                                              complete=False)
                        raise BudgetExceeded(
                            f"visited more than {budget} elements while building radius {n}",
                            report,
                        )
            frontier = new
            sizes.append(len(visited))
    finally:
        if pool is not None:
            pool.shutdown()
    return GrowthReport(sizes, len(visited), time.perf_counter() - start)


def rate_bounds(report: GrowthReport, witness=None) -> RateBounds:
    """Upper bound ``min_n beta_n^(1/n)`` and lower bound ``2^(1/L)`` from a witness."""
    if len(report.ball_sizes) < 2:
        raise EmptyReport("need a completed radius n >= 1")
    roots = report.nth_root_upper_bounds
    best = min(range(1, len(roots)), key=lambda n: roots[n])
    upper = roots[best]
    lower = 1.0
    length = None
    if witness is not None:
        length = witness.max_length
        lower = 2.0 ** (1.0 / length)
    if lower > upper * (1 + 1e-12):
        raise RateInconsistency(f"lower bound {lower} exceeds upper bound {upper}")
    return RateBounds(upper, lower, best, length)
