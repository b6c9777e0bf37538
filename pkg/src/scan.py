"""
QuarticPell Range Scans

Fans a range of parameters out to worker processes in contiguous chunks and
merges the per-chunk results back in input order. Workers share nothing;
worker callables must be top-level functions so they can be pickled.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from src.observability import get_logger

T = TypeVar("T")
R = TypeVar("R")

logger = get_logger("scan")


def resolve_jobs(jobs: int) -> int:
    """0 or negative means one worker per available core."""
    if jobs > 0:
        return jobs
    return os.cpu_count() or 1


def chunked(items: Sequence[T], chunk_size: int) -> List[Sequence[T]]:
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    return [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]


def run_chunks(
    worker: Callable[[Sequence[T]], List[R]],
    items: Sequence[T],
    jobs: int = 1,
    chunk_size: int = 1000,
    label: str = "scan",
) -> List[R]:
    """
    Apply worker to contiguous chunks of items and concatenate the results.

    Usage:
        hits = run_chunks(scan_chunk, range(205, 10**6 + 1), jobs=0)

    With jobs == 1 (or a single chunk) everything runs in-process.
    """
    chunks = chunked(items, chunk_size)
    workers = min(resolve_jobs(jobs), max(len(chunks), 1))
    started = time.perf_counter()
    logger.info("scan_started", label=label, items=len(items), chunks=len(chunks), jobs=workers)

    results: List[R] = []
    if workers == 1:
        for chunk in chunks:
            results.extend(worker(chunk))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves submission order
            for part in pool.map(worker, chunks):
                results.extend(part)

    logger.info(
        "scan_completed",
        label=label,
        results=len(results),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return results
