import threading

import pytest

from holopot.concurrency import ProcessingMonitor, parallel_map


def test_results_keep_input_order():
    items = list(range(20))
    assert parallel_map(lambda x: x * x, items, parallel=True, max_workers=4) == [x * x for x in items]
    assert parallel_map(lambda x: x * x, items, parallel=False) == [x * x for x in items]


def test_empty_and_single_item():
    assert parallel_map(lambda x: x, [], parallel=True) == []
    assert parallel_map(lambda x: x + 1, [41], parallel=True) == [42]


def test_lowest_index_failure_is_raised():
    def func(x):
        if x in (3, 7):
            raise ValueError(f"bad {x}")
        return x

    with pytest.raises(ValueError, match="bad 3"):
        parallel_map(func, list(range(10)), parallel=True, max_workers=4)


def test_threads_are_used_when_enabled():
    seen = set()
    barrier = threading.Barrier(2, timeout=5)

    def func(x):
        seen.add(threading.get_ident())
        barrier.wait()
        return x

    parallel_map(func, [1, 2], parallel=True, max_workers=2)
    assert len(seen) == 2


def test_monitor_counts_steps():
    monitor = ProcessingMonitor(total_count=3, label="unit", report_interval=2)
    for _ in range(3):
        monitor.step_completed()
    assert monitor.completed == 3
    assert monitor.reports == 2
    assert ProcessingMonitor(total_count=0, label="empty").total_count == 1


def test_monitor_reads_memory_only_when_reporting(monkeypatch):
    monitor = ProcessingMonitor(total_count=100, label="unit", report_interval=32)
    reads = []
    monkeypatch.setattr(monitor, "_memory_usage_mb", lambda: reads.append(1) or 10.0)
    for _ in range(100):
        monitor.step_completed()
    assert monitor.completed == 100
    assert len(reads) == monitor.reports == 4
