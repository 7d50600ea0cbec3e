"""Deterministic partition-and-merge execution.

Work is always split into a fixed task list first; results come back in task
order, so the merged output is identical for every worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def map_ordered(fn, tasks, workers: int = 1) -> list:
    """Apply ``fn`` to every task, preserving task order in the result."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))
