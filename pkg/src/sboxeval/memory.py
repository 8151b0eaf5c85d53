"""Memory budgets and accounting for spectrum storage.

Full spectra grow as 2^(n+m) elements, so every operation that materializes
one checks an optional byte budget first and records what it actually
allocates.  The tracker only counts buffers that hold polarity/spectrum data
(the full matrix in retain mode, per-worker column buffers in stream mode);
transient arithmetic temporaries are not spectrum storage.
"""

from __future__ import annotations

import os
import threading


class MemoryBudgetError(RuntimeError):
    """Requested spectrum storage exceeds the configured byte budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"spectrum storage needs {required:,} bytes but the budget is "
            f"{budget:,} bytes"
        )


class AllocationTracker:
    """Counts live bytes of spectrum storage and the peak since last reset.

    Thread-safe: parallel workers charge their column buffers concurrently.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._current = 0
        self._peak = 0

    def charge(self, nbytes: int) -> None:
        with self._lock:
            self._current += nbytes
            if self._current > self._peak:
                self._peak = self._current

    def release(self, nbytes: int) -> None:
        with self._lock:
            self._current -= nbytes

    def reset_peak(self) -> None:
        with self._lock:
            self._peak = self._current

    @property
    def current_bytes(self) -> int:
        return self._current

    @property
    def peak_bytes(self) -> int:
        return self._peak


# Process-wide accounting hook; tests read peak_bytes around an operation.
spectrum_allocations = AllocationTracker()


def check_budget(required: int, max_bytes: int | None) -> None:
    if max_bytes is not None and required > max_bytes:
        raise MemoryBudgetError(required, max_bytes)


def physical_memory_bytes() -> int | None:
    """Total physical RAM, or None when the platform does not expose it."""
    try:
        return os.sysconf("SC_PHYS_PAGES") * os.sysconf("SC_PAGE_SIZE")
    except (ValueError, OSError, AttributeError):
        return None


def default_budget() -> int | None:
    """Default allocation budget: 75% of physical memory."""
    total = physical_memory_bytes()
    if total is None:
        return None
    return (total * 3) // 4
