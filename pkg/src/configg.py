# src/configg.py
import os
import logging
from typing import Dict, Any, Optional
from dotenv import load_dotenv

# Carica variabili d'ambiente (.env opzionale)
load_dotenv()

# Configura logger
logger = logging.getLogger(__name__)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


class ConfigurationManager:
    """
    Singleton pattern implementation for configuration management.
    Ensures that only one configuration instance exists throughout the application.

    Every key is optional: the command line front end runs with no environment at all.
    """
    _instance: Optional['ConfigurationManager'] = None
    _initialized = False

    def __new__(cls) -> 'ConfigurationManager':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        # Prevent re-initialization
        if ConfigurationManager._initialized:
            return

        ConfigurationManager._initialized = True
        self._load_environment_config()
        self.validate_critical_configs()

    def _load_environment_config(self):
        """Load all environment configurations."""
        # Identifica l'ambiente
        self.environment = os.getenv("ENVIRONMENT", "development")

        # Logging
        self.log_level = os.getenv("LOG_LEVEL", "WARNING").upper()
        self.log_format = os.getenv("LOG_FORMAT", "text").lower()
        self.service_name = os.getenv("SERVICE_NAME", "weylforms")

        # Riproducibilità dei comandi randomizzati
        self.default_seed = int(os.getenv("WEYL_DEFAULT_SEED", "20240601"))

        # Worker per la suite di identità
        self.check_workers = int(os.getenv("WEYL_CHECK_WORKERS", "4"))

        # Memoizzazione (composizione di monomi, numeri di Stirling)
        self.memo_enabled = _env_bool("WEYL_MEMO_ENABLED", "true")
        self.memo_max_entries = int(os.getenv("WEYL_MEMO_MAX_ENTRIES", "200000"))

        # File di metriche Prometheus (vuoto = disabilitato)
        self.metrics_file = os.getenv("WEYL_METRICS_FILE", "")

    def get_cache_config(self) -> Dict[str, Any]:
        """Restituisce configurazione della memoizzazione come dictionary."""
        return {
            "cache_type": "memory" if self.memo_enabled else "none",
            "max_entries": self.memo_max_entries,
        }

    def get_logging_config(self) -> Dict[str, Any]:
        """Restituisce configurazione del logging come dictionary."""
        return {
            "level": self.log_level,
            "format": self.log_format,
            "service": self.service_name,
        }

    def validate_critical_configs(self) -> None:
        """Valida configurazioni critiche, registra avvisi e corregge i valori assurdi."""
        if self.check_workers < 1:
            logger.warning(f"WEYL_CHECK_WORKERS={self.check_workers} non valido, uso 1")
            self.check_workers = 1

        if self.memo_max_entries < 0:
            logger.warning(f"WEYL_MEMO_MAX_ENTRIES={self.memo_max_entries} non valido, memo disabilitata")
            self.memo_max_entries = 0
            self.memo_enabled = False

        if self.log_format not in ("text", "json"):
            logger.warning(f"LOG_FORMAT={self.log_format} sconosciuto, uso text")
            self.log_format = "text"

    @classmethod
    def reload(cls) -> 'ConfigurationManager':
        """Re-read the environment (mainly for testing)."""
        cls._initialized = False
        cls._instance = None
        return cls()


# Create singleton instance
config = ConfigurationManager()


def get_config() -> ConfigurationManager:
    """Get the singleton configuration instance."""
    return ConfigurationManager()
