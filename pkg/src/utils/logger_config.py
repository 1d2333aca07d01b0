# src/utils/logger_config.py
import logging
import json
import socket
from datetime import datetime, timezone
from typing import Optional

from src.configg import get_config

# Attributi standard di LogRecord, esclusi dai campi extra
_RESERVED = {
    "args", "exc_info", "exc_text", "msg", "message", "levelname", "levelno",
    "pathname", "filename", "module", "lineno", "funcName", "created", "msecs",
    "relativeCreated", "name", "thread", "threadName", "processName", "process",
    "asctime", "stack_info", "taskName",
}


class JsonFormatter(logging.Formatter):
    """One JSON object per record, extra fields included when serializable."""

    def __init__(self, service: str):
        super().__init__()
        self.service = service
        self.host = socket.gethostname()

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno,
            "service": self.service,
            "host": self.host,
        }

        if record.exc_info:
            log_data["exception"] = str(record.exc_info[1])

        for k, v in record.__dict__.items():
            if k in _RESERVED:
                continue
            try:
                json.dumps({k: v})
                log_data[k] = v
            except (TypeError, OverflowError):
                pass

        return json.dumps(log_data)


def setup_logging(log_level: Optional[str] = None, log_format: Optional[str] = None) -> None:
    """
    Configura il logging con formato configurabile (text o json).

    Args:
        log_level: Livello di log opzionale, altrimenti usa LOG_LEVEL dalla configurazione
        log_format: "text" o "json", altrimenti usa LOG_FORMAT
    """
    settings = get_config().get_logging_config()
    level = (log_level or settings["level"]).upper()
    fmt = (log_format or settings["format"]).lower()

    if fmt == "json":
        formatter: logging.Formatter = JsonFormatter(settings["service"])
    else:
        formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(name)s - %(message)s")

    # stderr: stdout resta pulito per l'output --json
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Rimuovi handler esistenti per evitare duplicati
    for hdlr in root_logger.handlers[:]:
        root_logger.removeHandler(hdlr)
    root_logger.addHandler(handler)

    logging.getLogger(__name__).debug(f"Logging inizializzato (livello: {level}, formato: {fmt})")
