"""Thread-count helper honoring the LEAFSPEC_THREADS cap."""

import os


def thread_count() -> int:
    """Number of worker threads to use; LEAFSPEC_THREADS caps it."""
    avail = os.cpu_count() or 1
    cap = os.environ.get("LEAFSPEC_THREADS")
    if cap is None:
        return avail
    try:
        n = int(cap)
    except ValueError:
        return avail
    return max(1, min(avail, n))
