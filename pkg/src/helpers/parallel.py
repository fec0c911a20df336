from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor

from src.core.settings import settings


def parallel_map[T, R](fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Apply ``fn`` to independent items; results keep the input order."""
    workers = threads or settings.runtime.threads
    work = list(items)
    if workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, work))
