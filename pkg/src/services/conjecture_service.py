"""
Esplorazioni numeriche esatte: tabella di Fubini e ricerca di controesempi
alla disuguaglianza |X o Y| >= |X| |Y|.

The inequality is an open conjecture, so the search only reports what it
finds; it never asserts the statement.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.config.check_ranges import RANDOM_COEFF_RANGE
from src.configg import get_config
from src.models.scalars import QSqrt2
from src.models.weyl import compose
from src.services import sampling
from src.services.combinatorics import fubini
from src.services.forms_service import euclid_power_pair, norm2
from src.utils.metrics import CONJECTURE_TRIALS

logger = logging.getLogger(__name__)


@dataclass
class FubiniRow:
    k: int
    fubini: int
    values: List[QSqrt2]

    @property
    def independent_of_i(self) -> bool:
        return all(v == self.values[0] for v in self.values)

    @property
    def matches(self) -> bool:
        return all(v == self.fubini for v in self.values)


def fubini_table(max_k: int) -> List[FubiniRow]:
    """For each k <= max_k: Fubini(k) and <(xd)^i, (xd)^(k-i)> for every i."""
    if max_k < 0:
        raise ValueError(f"max_k must be non-negative, got {max_k}")
    rows = []
    for k in range(max_k + 1):
        row = FubiniRow(k, fubini(k), [euclid_power_pair(i, k) for i in range(k + 1)])
        if not row.independent_of_i:
            logger.warning(f"Fubini row k={k} depends on i: {row.values}")
        rows.append(row)
    return rows


@dataclass
class Counterexample:
    trial: int
    n: int
    X: str
    Y: str
    norm2_X: QSqrt2
    norm2_Y: QSqrt2
    norm2_XY: QSqrt2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trial": self.trial,
            "n": self.n,
            "X": self.X,
            "Y": self.Y,
            "norm2_X": self.norm2_X.to_dict(),
            "norm2_Y": self.norm2_Y.to_dict(),
            "norm2_XY": self.norm2_XY.to_dict(),
        }


@dataclass
class ConjectureReport:
    trials: int
    seed: int
    n: Optional[int]
    max_exp: int
    max_terms: int
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.counterexamples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "n": self.n,
            "max_exp": self.max_exp,
            "max_terms": self.max_terms,
            "found": self.found,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }


def conjecture_search(trials: int, seed: Optional[int] = None, max_exp: int = 3, max_terms: int = 3,
                      n: Optional[int] = None, max_arity: int = 2) -> ConjectureReport:
    """
    Sample random pairs and test |X o Y|^2 >= |X|^2 |Y|^2 exactly in Q[sqrt2].

    Both sides are squares of non-negative reals, so comparing the squared
    norms decides the unsquared inequality. The same seed always replays the
    same pairs.
    """
    for name, value in (("trials", trials), ("max_exp", max_exp), ("max_terms", max_terms)):
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value}")
    if max_terms < 1 and trials:
        raise ValueError("max_terms must be at least 1")
    seed = get_config().default_seed if seed is None else seed
    rng = random.Random(seed)
    report = ConjectureReport(trials, seed, n, max_exp, max_terms)
    for trial in range(trials):
        arity = n if n is not None else rng.randint(1, max_arity)
        X = sampling.random_element(rng, arity, max_exp, max_terms, RANDOM_COEFF_RANGE)
        Y = sampling.random_element(rng, arity, max_exp, max_terms, RANDOM_COEFF_RANGE)
        nx, ny, nxy = norm2(X), norm2(Y), norm2(compose(X, Y))
        CONJECTURE_TRIALS.inc()
        if (nxy - nx * ny).sign() < 0:
            logger.warning(f"Counterexample at trial {trial}: X={X.to_text()} Y={Y.to_text()}")
            report.counterexamples.append(Counterexample(trial, arity, X.to_text(), Y.to_text(), nx, ny, nxy))
    logger.info(f"Conjecture search: {trials} trials, {len(report.counterexamples)} counterexamples")
    return report
