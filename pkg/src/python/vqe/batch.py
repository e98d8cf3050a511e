"""
Batch Runner for Independent Optimization Runs

Runs sweeps, restarts and multi-seed studies concurrently across worker
processes while keeping results in submission order.
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class BatchResult:
    """Outcome of one batch: results by submission index plus isolated errors"""
    results: List[Any] = field(default_factory=list)
    errors: Dict[int, str] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.errors


class BatchRunner:
    """
    Runs a picklable function over a list of items

    Features:
    - Concurrency limited by a semaphore over a process pool
    - Sequential in-process execution for jobs=1
    - Error isolation (a failed item leaves None in its slot)
    - Progress tracking
    """

    def __init__(self, jobs: int = 1):
        if jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.jobs = jobs
        self.metrics = {
            "total_items": 0,
            "successful_items": 0,
            "failed_items": 0,
        }

    def run(self, func: Callable[[Any], Any], items: Sequence[Any]) -> BatchResult:
        """Run func over items and return results in submission order"""
        start = time.perf_counter()
        logger.info(f"Batch runner started: {len(items)} items, jobs={self.jobs}")
        if self.jobs == 1:
            batch = self._run_sequential(func, items)
        else:
            batch = asyncio.run(self.run_async(func, items))
        batch.duration = time.perf_counter() - start
        logger.info(
            f"Batch runner finished: {len(items) - len(batch.errors)}/{len(items)} ok "
            f"in {batch.duration:.2f}s"
        )
        return batch

    def _record(self, batch: BatchResult, index: int, error: Optional[BaseException]) -> None:
        self.metrics["total_items"] += 1
        if error is None:
            self.metrics["successful_items"] += 1
        else:
            self.metrics["failed_items"] += 1
            batch.errors[index] = f"{type(error).__name__}: {error}"
            logger.error(f"Item {index} failed: {error}")

    def _run_sequential(self, func: Callable[[Any], Any], items: Sequence[Any]) -> BatchResult:
        batch = BatchResult(results=[None] * len(items))
        for index, item in enumerate(items):
            try:
                batch.results[index] = func(item)
                self._record(batch, index, None)
            except Exception as e:
                self._record(batch, index, e)
        return batch

    async def run_async(self, func: Callable[[Any], Any], items: Sequence[Any]) -> BatchResult:
        """Pooled run for callers already inside an event loop"""
        loop = asyncio.get_running_loop()
        semaphore = asyncio.Semaphore(self.jobs)

        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            async def run_one(item: Any) -> Any:
                async with semaphore:
                    return await loop.run_in_executor(executor, func, item)

            outcomes = await asyncio.gather(*(run_one(item) for item in items), return_exceptions=True)

        batch = BatchResult(results=[None] * len(items))
        for index, outcome in enumerate(outcomes):
            if isinstance(outcome, BaseException):
                self._record(batch, index, outcome)
            else:
                batch.results[index] = outcome
                self._record(batch, index, None)
        return batch


def run_jobs(func: Callable[[Any], Any], items: Sequence[Any], jobs: int = 1) -> BatchResult:
    """Convenience wrapper: BatchRunner(jobs).run(func, items)"""
    return BatchRunner(jobs).run(func, items)
