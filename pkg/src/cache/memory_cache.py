import threading
import logging
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable, Optional

logger = logging.getLogger(__name__)

_MISSING = object()


class MemoryCache:
    """Memo table in-memory, thread-safe, con limite di dimensione.

    Values are pure functions of their keys, so there is no expiry: when the
    table is full the oldest entries are evicted first.
    """

    def __init__(self, name: str = "default", max_entries: int = 200000):
        self.name = name
        self.max_entries = max_entries
        self.cache: "OrderedDict[Hashable, Any]" = OrderedDict()
        self.lock = threading.RLock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """Recupera valore dalla cache."""
        with self.lock:
            value = self.cache.get(key, _MISSING)
            if value is _MISSING:
                self.misses += 1
                return None
            self.hits += 1
            return value

    def set(self, key: Hashable, value: Any) -> bool:
        """Salva valore nella cache."""
        if self.max_entries <= 0:
            return False
        with self.lock:
            self.cache[key] = value
            if len(self.cache) > self.max_entries:
                # Rimuovi il 20% delle voci più vecchie
                drop = max(1, self.max_entries // 5)
                for _ in range(drop):
                    self.cache.popitem(last=False)
                logger.debug(f"Cache {self.name}: rimosse {drop} voci vecchie")
            return True

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the memoized value, computing it outside the lock on a miss.

        Two workers may compute the same key concurrently; both produce the same
        value, so whichever write lands last is equivalent.
        """
        with self.lock:
            value = self.cache.get(key, _MISSING)
            if value is not _MISSING:
                self.hits += 1
                return value
            self.misses += 1
        value = compute()
        self.set(key, value)
        return value

    def delete(self, key: Hashable) -> bool:
        """Elimina chiave dalla cache."""
        with self.lock:
            if key in self.cache:
                del self.cache[key]
                return True
            return False

    def exists(self, key: Hashable) -> bool:
        with self.lock:
            return key in self.cache

    def clear(self) -> int:
        with self.lock:
            size = len(self.cache)
            self.cache.clear()
            self.hits = 0
            self.misses = 0
            return size

    def info(self) -> Dict[str, Any]:
        """Restituisce statistiche sulla cache."""
        with self.lock:
            total = self.hits + self.misses
            return {
                "status": "in-memory",
                "name": self.name,
                "total_keys": len(self.cache),
                "max_entries": self.max_entries,
                "hits": self.hits,
                "misses": self.misses,
                "hit_rate": round(self.hits / total * 100, 2) if total else 0.0,
            }


class NullCache:
    """Cache disabilitata: calcola sempre."""

    def __init__(self, name: str = "default"):
        self.name = name

    def get(self, key: Hashable) -> Optional[Any]:
        return None

    def set(self, key: Hashable, value: Any) -> bool:
        return False

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        return compute()

    def delete(self, key: Hashable) -> bool:
        return False

    def exists(self, key: Hashable) -> bool:
        return False

    def clear(self) -> int:
        return 0

    def info(self) -> Dict[str, Any]:
        return {"status": "disabled", "name": self.name}
