"""Utility per metriche Prometheus (textfile, nessun endpoint HTTP)."""
import logging
import time
from contextlib import contextmanager
from typing import Iterator

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

logger = logging.getLogger(__name__)

registry = CollectorRegistry()

CHECKS_TOTAL = Counter(
    "weylforms_checks_total",
    "Identity checks executed, by lemma and outcome",
    ["lemma", "outcome"],
    registry=registry,
)

CHECK_SECONDS = Histogram(
    "weylforms_check_seconds",
    "Wall time of one identity check",
    ["lemma"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0),
    registry=registry,
)

CONJECTURE_TRIALS = Counter(
    "weylforms_conjecture_trials_total",
    "Random pairs tested by the norm conjecture search",
    registry=registry,
)


@contextmanager
def timed_check(lemma: str) -> Iterator[None]:
    """Observe the duration of a check under its lemma label."""
    start = time.perf_counter()
    try:
        yield
    finally:
        CHECK_SECONDS.labels(lemma=lemma).observe(time.perf_counter() - start)


def record_check(lemma: str, passed: bool) -> None:
    CHECKS_TOTAL.labels(lemma=lemma, outcome="pass" if passed else "fail").inc()


def write_metrics(path: str) -> bool:
    """Scrive le metriche nel formato testuale Prometheus."""
    try:
        write_to_textfile(path, registry)
        logger.info(f"Metriche scritte in {path}")
        return True
    except OSError as e:
        logger.error(f"Errore scrittura metriche su {path}: {e}")
        return False
