from typing import Any, Callable, Dict, Hashable, Optional, Protocol
import logging
import threading

from .memory_cache import MemoryCache, NullCache

logger = logging.getLogger(__name__)


class CacheInterface(Protocol):
    """Protocol defining the memo table interface."""

    def get(self, key: Hashable) -> Optional[Any]:
        ...

    def set(self, key: Hashable, value: Any) -> bool:
        ...

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        ...

    def clear(self) -> int:
        ...

    def info(self) -> Dict[str, Any]:
        ...


class CacheFactory:
    """
    Factory pattern implementation for memo table creation.
    Creates appropriate cache instances based on configuration.
    """

    @staticmethod
    def create_cache(cache_type: str = "memory", name: str = "default", **config) -> CacheInterface:
        """
        Create cache instance based on type and configuration.

        Args:
            cache_type: Type of cache ('memory', 'none')
            name: Table name, used in statistics
            **config: Configuration parameters (max_entries)
        """
        if cache_type == "memory":
            logger.debug(f"Creating MemoryCache '{name}'")
            return MemoryCache(name=name, max_entries=config.get("max_entries", 200000))
        elif cache_type == "none":
            logger.debug(f"Creating NullCache '{name}'")
            return NullCache(name=name)
        else:
            raise ValueError(f"Unknown cache type: {cache_type}")


class CacheManager:
    """
    Singleton pattern implementation for memo table management.
    Holds one named table per memoized function.
    """
    _instance: Optional['CacheManager'] = None

    def __new__(cls) -> 'CacheManager':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._tables = {}
            cls._instance._settings = None
            cls._instance._lock = threading.Lock()
        return cls._instance

    def initialize(self, cache_type: str = "memory", **config) -> None:
        """Set the settings used for tables created from now on."""
        with self._lock:
            self._settings = {"cache_type": cache_type, **config}
            self._tables.clear()
            logger.info(f"Cache manager initialized ({cache_type})")

    def _default_settings(self) -> Dict[str, Any]:
        from src.configg import get_config

        return get_config().get_cache_config()

    def get_cache(self, name: str) -> CacheInterface:
        """Get (creating on first use) the named table."""
        with self._lock:
            table = self._tables.get(name)
            if table is None:
                settings = dict(self._settings or self._default_settings())
                cache_type = settings.pop("cache_type", "memory")
                table = CacheFactory.create_cache(cache_type, name=name, **settings)
                self._tables[name] = table
            return table

    def info(self) -> Dict[str, Dict[str, Any]]:
        with self._lock:
            return {name: table.info() for name, table in self._tables.items()}

    def reset(self) -> None:
        """Drop all tables and settings (mainly for testing)."""
        with self._lock:
            self._tables.clear()
            self._settings = None


# Create singleton instance
cache_manager = CacheManager()


def get_cache(name: str) -> CacheInterface:
    """Get the named memo table from the singleton manager."""
    return cache_manager.get_cache(name)


def initialize_cache(cache_type: str = "memory", **config) -> None:
    """Initialize the singleton manager with configuration."""
    cache_manager.initialize(cache_type, **config)


__all__ = [
    'MemoryCache',
    'NullCache',
    'CacheFactory',
    'CacheManager',
    'CacheInterface',
    'get_cache',
    'initialize_cache',
    'cache_manager',
]
