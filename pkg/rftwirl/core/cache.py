import functools
from collections.abc import Callable
from typing import Any, TypeVar

import structlog
from diskcache import Cache

from rftwirl.config import settings

logger = structlog.get_logger("rftwirl.cache")

F = TypeVar("F", bound=Callable[..., Any])

_caches: dict[str, Cache] = {}


def _cache() -> Cache | None:
    directory = (settings.CACHE_DIR or "").strip()
    if not directory:
        return None
    if directory not in _caches:
        _caches[directory] = Cache(directory)
    return _caches[directory]


def disk_memoize(namespace: str) -> Callable[[F], F]:
    """
    Persist results on disk under RFTWIRL_CACHE_DIR.
    Pass-through when the directory is not configured.
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            cache = _cache()
            if cache is None:
                return func(*args, **kwargs)

            key_parts = [namespace]
            for arg in args:
                key_parts.append(str(arg))
            for k, v in sorted(kwargs.items()):
                key_parts.append(f"{k}={v}")
            key = ":".join(key_parts)

            cached_val = cache.get(key)
            if cached_val is not None:
                logger.debug("disk_cache_hit", key=key)
                return cached_val

            result = func(*args, **kwargs)
            cache.set(key, result)
            logger.debug("disk_cache_store", key=key)
            return result

        return wrapper  # type: ignore[return-value]

    return decorator


def clear_cache() -> None:
    cache = _cache()
    if cache is not None:
        cache.clear()
