"""
Generatori casuali riproducibili (random.Random con seed esplicito).

Every function takes the generator as its first argument so callers control
the seed; nothing here touches the global random state.
"""
import random
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from src.config.check_ranges import RANDOM_COEFF_RANGE, RANDOM_MAX_EXP, RANDOM_MAX_TERMS
from src.models import multi_index as mi
from src.models.matrix import ExactMatrix
from src.models.polynomial import MultiPoly
from src.models.weyl import WeylElement, WeylMonomial


def random_coefficient(rng: random.Random, coeff_range: Tuple[int, int] = RANDOM_COEFF_RANGE) -> int:
    """Non-zero integer in the closed range."""
    low, high = coeff_range
    while True:
        value = rng.randint(low, high)
        if value:
            return value


def random_monomial(rng: random.Random, n: int, max_exp: int = RANDOM_MAX_EXP) -> WeylMonomial:
    alpha = tuple(rng.randint(0, max_exp) for _ in range(n))
    beta = tuple(rng.randint(0, max_exp) for _ in range(n))
    return WeylMonomial(alpha, beta)


def all_monomials(n: int, max_exp: int) -> List[WeylMonomial]:
    """Every x^a d^b with entries <= max_exp, in canonical order."""
    upper = (max_exp,) * n
    monomials = [WeylMonomial(a, b) for a in mi.box(upper) for b in mi.box(upper)]
    return sorted(monomials, key=lambda m: m.sort_key())


def _element_from(rng: random.Random, n: int, pool: Sequence[WeylMonomial], max_terms: int,
                  coeff_range: Tuple[int, int]) -> WeylElement:
    count = rng.randint(1, min(max_terms, len(pool)))
    chosen = rng.sample(list(pool), count)
    return WeylElement(n, {m: random_coefficient(rng, coeff_range) for m in chosen})


def random_element(rng: random.Random, n: int, max_exp: int = RANDOM_MAX_EXP,
                   max_terms: int = RANDOM_MAX_TERMS,
                   coeff_range: Tuple[int, int] = RANDOM_COEFF_RANGE) -> WeylElement:
    """Non-zero element with distinct monomials and non-zero integer coefficients."""
    count = rng.randint(1, min(max_terms, (max_exp + 1) ** (2 * n)))
    terms = {}
    while len(terms) < count:
        terms[random_monomial(rng, n, max_exp)] = random_coefficient(rng, coeff_range)
    return WeylElement(n, terms)


def random_homogeneous(rng: random.Random, n: int, max_exp: int = RANDOM_MAX_EXP,
                       max_terms: int = RANDOM_MAX_TERMS, weight: Optional[int] = None,
                       coeff_range: Tuple[int, int] = RANDOM_COEFF_RANGE) -> WeylElement:
    """Non-zero weight-homogeneous element (weight drawn from a random monomial if not given)."""
    if weight is None:
        weight = random_monomial(rng, n, max_exp).weight()
    pool = [m for m in all_monomials(n, max_exp) if m.weight() == weight]
    if not pool:
        raise ValueError(f"No monomial of weight {weight} with exponents <= {max_exp}")
    return _element_from(rng, n, pool, max_terms, coeff_range)


def random_poly(rng: random.Random, arity: int, max_degree: int = 6, max_terms: int = 3,
                coeff_range: Tuple[int, int] = RANDOM_COEFF_RANGE) -> MultiPoly:
    """Non-zero polynomial of total degree <= max_degree."""
    count = rng.randint(1, min(max_terms, mi.binom(max_degree + arity, arity)))
    terms = {}
    while len(terms) < count:
        budget = max_degree
        exps = []
        for _ in range(arity):
            e = rng.randint(0, budget)
            exps.append(e)
            budget -= e
        rng.shuffle(exps)
        terms[tuple(exps)] = random_coefficient(rng, coeff_range)
    return MultiPoly(arity, terms)


def random_int_matrix(rng: random.Random, size: int, bound: int = 9) -> ExactMatrix:
    return ExactMatrix.from_function(size, lambda i, j: rng.randint(-bound, bound), ring="int")


def random_symmetric_rat_matrix(rng: random.Random, size: int, bound: int = 6) -> ExactMatrix:
    """Symmetric matrix with small rational entries (denominators 1..3)."""
    upper = {}
    for i in range(size):
        for j in range(i, size):
            upper[(i, j)] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    entry: Callable[[int, int], Fraction] = lambda i, j: upper[(min(i, j), max(i, j))]
    return ExactMatrix.from_function(size, entry, ring="rat")


def random_basis(rng: random.Random, n: int, max_exp: int, size: int) -> List[WeylMonomial]:
    """Distinct monomials drawn from the exponent box, canonical order."""
    pool = all_monomials(n, max_exp)
    chosen = rng.sample(pool, min(size, len(pool)))
    return sorted(chosen, key=lambda m: m.sort_key())
