"""Thread-pool fan-out with progress monitoring for independent checks."""

import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import structlog

try:  # Optional dependency for richer monitoring
    import psutil
except ImportError:  # pragma: no cover - psutil is optional in some environments
    psutil = None

from .settings import ENABLE_PARALLEL_PROCESSING, MAX_WORKERS

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ProcessingMonitor:
    """Track progress, timing and memory usage of a batch of tasks.

    Every completion is counted; resident memory is read only on every
    ``report_interval``-th completion and on the last one.
    """

    def __init__(self, total_count: int, label: str, report_interval: int = 64) -> None:
        self.total_count = max(total_count, 1)
        self.label = label
        self.start_time = time.time()
        self.completed = 0
        self.reports = 0
        self.lock = threading.Lock()
        self.report_interval = max(report_interval, 1)

    def _memory_usage_mb(self) -> Optional[float]:
        if psutil is None:
            return None
        process = psutil.Process()
        return process.memory_info().rss / 1024 / 1024

    def step_completed(self, detail: Optional[str] = None) -> None:
        with self.lock:
            self.completed += 1
            completed = self.completed
            should_report = completed % self.report_interval == 0 or completed >= self.total_count
            if should_report:
                self.reports += 1
        if not should_report:
            return

        memory_usage = self._memory_usage_mb()
        logger.debug(
            "tasks_progress",
            label=self.label,
            completed=completed,
            total=self.total_count,
            detail=detail,
            memory_mb=None if memory_usage is None else round(memory_usage, 1),
            elapsed_s=round(time.time() - self.start_time, 3),
        )


def _map_sequential(func: Callable[[T], R], items: Sequence[T], monitor: ProcessingMonitor) -> List[R]:
    results: List[R] = []
    for item in items:
        results.append(func(item))
        monitor.step_completed()
    return results


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T],
    *,
    label: str = "tasks",
    max_workers: Optional[int] = None,
    parallel: Optional[bool] = None,
) -> List[R]:
    """Apply ``func`` to every item, returning results in input order.

    Runs on a thread pool unless parallelism is disabled (argument or
    ``HOLOPOT_ENABLE_PARALLEL``) or there is at most one item. If any call
    raises, the exception from the lowest-indexed failing item is re-raised.
    """
    items = list(items)
    monitor = ProcessingMonitor(total_count=len(items), label=label)
    enabled = ENABLE_PARALLEL_PROCESSING if parallel is None else parallel
    if not enabled or len(items) <= 1:
        return _map_sequential(func, items, monitor)

    if max_workers is None:
        max_workers = MAX_WORKERS
    max_workers = max(1, min(max_workers, len(items)))

    outcomes: List[Tuple[int, bool, object]] = []
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_index = {executor.submit(func, item): idx for idx, item in enumerate(items)}
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                outcomes.append((index, True, future.result()))
            except Exception as error:  # noqa: BLE001
                logger.warning("task_failed", label=label, index=index, error=str(error))
                outcomes.append((index, False, error))
            finally:
                monitor.step_completed(detail=str(index))

    outcomes.sort(key=lambda entry: entry[0])
    for _, ok, value in outcomes:
        if not ok:
            raise value  # type: ignore[misc]
    return [value for _, _, value in outcomes]  # type: ignore[misc]
