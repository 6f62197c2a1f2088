"""Benchmark harness: generate, solve, optionally cross-check with the oracle, write CSV."""
from __future__ import annotations

import csv
import logging
import typing as t
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from time import perf_counter

from .adapters import get_backend
from .defaults import DEFAULT_BENCH_JOBS, DEFAULT_LIMITS, DEFAULT_OVERLAP_BOUND, Limits, OverlapBound
from .errors import SizeLimitExceeded, VerificationMismatch
from .generators import generate
from .types import Problem

logger = logging.getLogger(__name__)

CSV_HEADER = ("problem", "n", "k", "seed", "result", "count", "millis")


@dataclass(frozen=True)
class BenchRecord:
    """One solve, one CSV row. `count` is None when only the decision was computed."""

    problem: Problem
    n: int
    k: int
    seed: int
    result: str
    count: int | None
    millis: float

    def row(self) -> t.List[str]:
        return [
            self.problem.value,
            str(self.n),
            str(self.k),
            str(self.seed),
            self.result,
            "" if self.count is None else str(self.count),
            f"{self.millis:.3f}",
        ]


@dataclass(frozen=True)
class BenchJob:
    problem: Problem
    n: int
    k: int
    seed: int
    verify: bool = False
    decide_only: bool = False
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND
    limits: Limits = DEFAULT_LIMITS


def parse_n_range(text: str) -> range:
    """Parse `A..B` (both ends included) or a single integer."""
    first, separator, last = text.partition("..")
    try:
        low = int(first)
        high = int(last) if separator else low
    except ValueError:
        raise ValueError(f"Expected a range 'A..B', got {text!r}")
    if low < 0 or high < low:
        raise ValueError(f"Expected 0 <= A <= B in range {text!r}")
    return range(low, high + 1)


def run_job(job: BenchJob) -> BenchRecord:
    """Generate and solve one instance.

    Raises:
        VerificationMismatch: When `job.verify` is set and the oracle disagrees.
    """
    instance = generate(job.problem, job.n, job.k, job.seed, bound=job.bound)
    backend = get_backend(job.problem, bound=job.bound)
    start = perf_counter()
    count: int | None = None
    if job.decide_only:
        satisfiable = backend.decide(instance, job.k)
    else:
        count = backend.count(instance, job.k)
        satisfiable = count > 0
    millis = (perf_counter() - start) * 1000.0
    record = BenchRecord(
        job.problem, job.n, job.k, job.seed, "sat" if satisfiable else "unsat", count, millis
    )
    if job.verify:
        _verify(job, instance, record)
    logger.info(
        "%s n=%d k=%d seed=%d: %s in %.3f ms",
        job.problem.value,
        job.n,
        job.k,
        job.seed,
        record.result,
        millis,
    )
    return record


def _verify(job: BenchJob, instance: t.Any, record: BenchRecord) -> None:
    oracle = get_backend(job.problem, oracle=True, bound=job.bound, limits=job.limits)
    try:
        expected = oracle.count(instance, job.k)
    except SizeLimitExceeded:
        logger.debug("Skipping verification of %s n=%d above oracle caps", job.problem.value, job.n)
        return
    mismatch = (expected > 0) != (record.result == "sat") or (
        record.count is not None and record.count != expected
    )
    if mismatch:
        msg = (
            f"{job.problem.value} n={job.n} k={job.k} seed={job.seed}: solver says "
            f"{record.result} (count {record.count}), oracle counts {expected}"
        )
        logger.error("Verification mismatch: %s", msg)
        raise VerificationMismatch(msg)


def run_bench(
    problem: Problem,
    n_values: t.Iterable[int],
    k: int,
    seeds: int,
    verify: bool = False,
    jobs: int = DEFAULT_BENCH_JOBS,
    decide_only: bool = False,
    bound: OverlapBound = DEFAULT_OVERLAP_BOUND,
    limits: Limits | None = None,
) -> t.List[BenchRecord]:
    """Run every `(n, seed)` job, with a process pool when `jobs > 1`.

    Records are ordered by `n`, then by seed.
    """
    work = [
        BenchJob(problem, n, k, seed, verify, decide_only, bound, limits or DEFAULT_LIMITS)
        for n in n_values
        for seed in range(seeds)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            records = list(executor.map(run_job, work))
    else:
        records = [run_job(job) for job in work]
    return sorted(records, key=lambda record: (record.n, record.seed))


def write_csv(records: t.Iterable[BenchRecord], stream: t.TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.row())
