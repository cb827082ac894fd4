import os
from concurrent.futures import ThreadPoolExecutor


def n_workers():
    """Worker count from ``TUBAL_THREADS`` (unset or 0 means one per CPU)."""
    raw = os.environ.get("TUBAL_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"TUBAL_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("TUBAL_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def slice_map(func, indices):
    """``[func(i) for i in indices]``, possibly on a thread pool.

    Each call must be pure in ``i``; results come back in input order so the
    output never depends on scheduling.
    """
    indices = list(indices)
    workers = min(n_workers(), len(indices))
    if workers <= 1:
        return [func(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, indices))
