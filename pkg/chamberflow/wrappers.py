from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def fan_out(function: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """Runs ``function`` over ``items`` in a thread pool; results keep the input order"""
    items = list(items)
    if workers == 1 or len(items) <= 1:
        return [function(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))

