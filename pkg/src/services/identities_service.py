"""
Verificatori eseguibili delle identità combinatorie e dei teoremi sulle forme.

Each verifier is a plain function returning bool. The suite wraps them in
IdentityCheck strategies (one per registry key), created through
IdentityCheckFactory and executed by run_suite on a thread pool; results
are always reported in registry order.
"""
import logging
import random
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Type

from src.config import check_ranges as ranges
from src.configg import get_config
from src.models import multi_index as mi
from src.models.multi_index import MultiIndex, binom
from src.models.polynomial import MultiPoly
from src.models.scalars import QSqrt2, sqrt2_power
from src.models.weyl import (
    WeylElement, apply, commutator, compose, embed_factor, factor_monomial, relations_check,
)
from src.services import forms_service as forms
from src.services import sampling
from src.services.combinatorics import (
    build_M1, d_poly, d_tilde_poly, eta, eta_rewritten, fubini, fubini_recurrence, homogenize_mu,
)
from src.services.linalg_service import det, is_positive_definite, poly_det
from src.utils.errors import ArityMismatchError
from src.utils.metrics import record_check, timed_check

logger = logging.getLogger(__name__)

Case = Dict[str, Any]

_T = MultiPoly.variable(0, 1)
_X = MultiPoly.variable(0, 3)
_Y = MultiPoly.variable(1, 3)
_Z = MultiPoly.variable(2, 3)


# ---------------------------------------------------------------------------
# combinatorial identities
# ---------------------------------------------------------------------------

def lemma1_sides(n: int) -> Tuple[MultiPoly, MultiPoly]:
    """Both sides of sum C(n,b)C(b,i)C(n-i,a)(x+1)^a x^i y^a z^b = (1+(1+x)(y+z+yz))^n."""
    x_plus_1 = _X + 1
    lhs = MultiPoly.zero(3)
    for b in range(n + 1):
        for i in range(b + 1):
            for a in range(n - i + 1):
                coeff = binom(n, b) * binom(b, i) * binom(n - i, a)
                if coeff:
                    lhs = lhs + x_plus_1 ** a * MultiPoly.monomial((i, a, b), coeff)
    rhs = (1 + x_plus_1 * (_Y + _Z + _Y * _Z)) ** n
    return lhs, rhs


def lemma1_check(n: int) -> bool:
    lhs, rhs = lemma1_sides(n)
    return lhs == rhs


def corollary2_check(n: int, a: int, b: int) -> bool:
    lhs = sum(2 ** a * binom(n, b) * binom(b, i) * binom(n - i, a) for i in range(n + 1))
    rhs = sum(2 ** b * binom(n, a) * binom(a, i) * binom(n - i, b) for i in range(n + 1))
    return lhs == rhs


def lemma3_sides(alpha: MultiIndex, beta: MultiIndex, theta: MultiIndex) -> Tuple[int, int]:
    """Denominator-cleared sides; equal to the fractional statement whenever it is defined."""
    if not len(alpha) == len(beta) == len(theta):
        raise ArityMismatchError(len(alpha), len(theta), "multi-indices")
    left_sum = sum(
        mi.multi_binom(mi.sub(theta, g), alpha) * mi.multi_binom(beta, g) for g in mi.box(beta)
    )
    right_sum = sum(
        mi.multi_binom(mi.sub(theta, g), beta) * mi.multi_binom(alpha, g) for g in mi.box(alpha)
    )
    lhs = 2 ** mi.norm1(alpha) * mi.multi_binom(theta, beta) * left_sum
    rhs = 2 ** mi.norm1(beta) * mi.multi_binom(theta, alpha) * right_sum
    return lhs, rhs


def lemma3_check(alpha: MultiIndex, beta: MultiIndex, theta: MultiIndex) -> bool:
    lhs, rhs = lemma3_sides(alpha, beta, theta)
    return lhs == rhs


def lemma100_sides(a: int, b: int, c: int) -> Tuple[MultiPoly, MultiPoly]:
    lhs = MultiPoly(1, {(j,): binom(a, j) * binom(a + b - j, a + c) for j in range(a + 1)})
    rhs = MultiPoly.zero(1)
    for i in range(a + 1):
        coeff = binom(a, i) * binom(b, i + c)
        if coeff:
            rhs = rhs + (_T + 1) ** i * coeff
    return lhs, rhs


def lemma100_check(a: int, b: int, c: int) -> bool:
    lhs, rhs = lemma100_sides(a, b, c)
    return lhs == rhs


def lemma101_check(a: int, b: int, c: int) -> bool:
    return d_poly(a, b, c) == d_tilde_poly(a, b, c)


def triangular_binomial(k: int) -> int:
    return k * (k + 1) // 2


def lemma98_det_check(a: int, k: int) -> bool:
    """det M^(a)(t) = t^C(k+1,2)."""
    return poly_det(forms.build_M(a, k)) == _T ** triangular_binomial(k)


def lemma98_triangular_check(a: int, k: int) -> bool:
    """M1 . M^(a)(t) has entries C(a+j, a+i) t^i (zero below the diagonal) and det M1 = 1."""
    if det(build_M1(k)) != 1:
        return False
    product = build_M1(k) @ forms.build_M(a, k)
    return all(
        product[i, j] == _T ** i * binom(a + j, a + i)
        for i in range(k + 1) for j in range(k + 1)
    )


def lemma102_det_check(a: int, k: int) -> bool:
    """det M~^(a,k) = x^(a(k+1)) (xy+z)^C(k+1,2)."""
    expected = _X ** (a * (k + 1)) * (_X * _Y + _Z) ** triangular_binomial(k)
    return poly_det(forms.build_Mtilde(a, k)) == expected


def lemma102_substitution_check(a: int, k: int) -> bool:
    """Every entry of M~^(a,k) is x^(a+j) y^i mu_{i,j}(1 + z/(xy))."""
    return all(
        d_tilde_poly(a + j, i, a) == homogenize_mu(a, i, j)
        for i in range(k + 1) for j in range(k + 1)
    )


def lemma103_det_check(a: int, k: int) -> bool:
    """det N^(a,k) > 0 and equals the closed form."""
    value = det(forms.build_N(a, k))
    return value > 0 and value == forms.n_det_closed_form(a, k)


def lemma103_rewrite_check(a: int, k: int) -> bool:
    """eta^(a,0)_{i,j} = (a+i)! j! sum(...) = (a+i)! j! d^(a)_{a+j,i}(1,1,1)."""
    for i in range(k + 1):
        for j in range(k + 1):
            value = eta(a, 0, i, j)
            via_d = factorial(a + i) * factorial(j) * d_poly(a + j, i, a).eval((1, 1, 1))
            if value != eta_rewritten(a, i, j) or value != via_d:
                return False
    return forms.build_Md(a, k) == forms.build_Mtilde(a, k)


def lemma104_check(a: int, lambdas: Sequence[int]) -> bool:
    """<X,X> = sqrt2^a lambda^T N lambda, positive unless every lambda vanishes."""
    lhs, rhs = forms.lemma104_quadratic(a, lambdas)
    if lhs != rhs:
        return False
    if any(lambdas):
        return lhs.sign() > 0
    return lhs.is_zero()


def lemma4_check(m1, m2) -> bool:
    """Closed form of the Frobenius form on a monomial pair."""
    closed = forms.frob_pair_closed(m1.alpha, m1.beta, m2.alpha, m2.beta)
    return closed == forms.frob_monomials(m1, m2)


def lemma20_check(X: WeylElement) -> bool:
    """Non-zero multi-weight components are traceless, and T(X) = T(bar X)."""
    for omega, part in X.multiweight_components().items():
        if any(omega) and forms.trace(part) != 0:
            return False
    return forms.trace(X) == forms.trace(X.bar())


def lemma21_check(m1, m2) -> bool:
    """w(X) + w(Y) != 0 implies (X, Y) = 0."""
    if not any(mi.add(m1.multiweight(), m2.multiweight())):
        return True
    return forms.frob_monomials(m1, m2) == 0


def composition_oracle_check(X: WeylElement, Y: WeylElement, f: MultiPoly) -> bool:
    """(X o Y) f = X (Y f)."""
    return apply(compose(X, Y), f) == apply(X, apply(Y, f))


def decomposable_product_check(m1, m2) -> bool:
    """<X, Y> = prod_i <X^(i), Y^(i)> for monomials factored slot by slot."""
    product = QSqrt2.one()
    for (_, f1), (_, f2) in zip(factor_monomial(m1), factor_monomial(m2)):
        product = product * forms.euclid(WeylElement.from_monomial(f1), WeylElement.from_monomial(f2))
    return forms.euclid(WeylElement.from_monomial(m1), WeylElement.from_monomial(m2)) == product


def embedding_check(m) -> bool:
    """Composing the embedded slot factors rebuilds the monomial."""
    rebuilt = WeylElement.one(m.n)
    for slot, factor in factor_monomial(m):
        rebuilt = compose(rebuilt, embed_factor(slot, factor, m.n))
    return rebuilt == WeylElement.from_monomial(m)


# ---------------------------------------------------------------------------
# suite: results, options, strategies
# ---------------------------------------------------------------------------

@dataclass
class CheckOptions:
    """Range overrides; None falls back to the defaults in check_ranges."""

    max_n: Optional[int] = None
    max_a: Optional[int] = None
    max_k: Optional[int] = None
    max_exp: Optional[int] = None
    max_entry: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    n: Optional[int] = None

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value is not None and value < 0:
                raise ValueError(f"Range option {name} must be non-negative, got {value}")
        if self.n is not None and self.n < 1:
            raise ValueError(f"Arity must be positive, got {self.n}")

    def pick(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value

    def rng(self, key: str) -> random.Random:
        seed = self.seed if self.seed is not None else get_config().default_seed
        return random.Random(f"{seed}:{key}")

    def arity(self, rng: random.Random) -> int:
        return self.n if self.n is not None else rng.randint(1, ranges.RANDOM_MAX_ARITY)


@dataclass
class CheckResult:
    lemma: str
    passed: bool
    cases: int
    seconds: float = 0.0
    description: str = ""
    counterexample: Optional[Case] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SuiteReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "results": [r.to_dict() for r in self.results]}


def _text(X: WeylElement) -> str:
    return X.to_text()


class IdentityCheck(ABC):
    """
    Abstract base class for identity checks.
    Strategy pattern implementation: each subclass enumerates its cases.
    """

    key: str = ""
    description: str = ""

    @abstractmethod
    def iter_cases(self, options: CheckOptions) -> Iterator[Tuple[Case, bool]]:
        """Yield (case description, passed) pairs."""

    def run(self, options: CheckOptions) -> CheckResult:
        logger.info(f"Check {self.key} started")
        start = time.perf_counter()
        cases = 0
        counterexample = None
        with timed_check(self.key):
            for case, ok in self.iter_cases(options):
                cases += 1
                if not ok:
                    counterexample = case
                    logger.warning(f"Check {self.key} failed at {case}")
                    break
        result = CheckResult(
            lemma=self.key,
            passed=counterexample is None,
            cases=cases,
            seconds=round(time.perf_counter() - start, 6),
            description=self.description,
            counterexample=counterexample,
        )
        record_check(self.key, result.passed)
        logger.info(f"Check {self.key} finished: passed={result.passed} cases={cases}")
        return result


class Lemma1Check(IdentityCheck):
    key = "1"
    description = "(1+(1+x)(y+z+yz))^n expansion"

    def iter_cases(self, options):
        for n in range(options.pick("max_n", ranges.LEMMA1_MAX_N) + 1):
            yield {"n": n}, lemma1_check(n)


class Corollary2Check(IdentityCheck):
    key = "2"
    description = "binomial symmetry in a and b"

    def iter_cases(self, options):
        for n in range(options.pick("max_n", ranges.COROLLARY2_MAX_N) + 1):
            for a in range(n + 1):
                for b in range(n + 1):
                    yield {"n": n, "a": a, "b": b}, corollary2_check(n, a, b)


class Lemma3Check(IdentityCheck):
    key = "3"
    description = "multi-index binomial identity (denominators cleared)"

    def iter_cases(self, options):
        top = options.pick("max_entry", ranges.LEMMA3_MAX_ENTRY)
        arities = (options.n,) if options.n is not None else ranges.LEMMA3_ARITIES
        for n in arities:
            upper = (top,) * n
            for alpha in mi.box(upper):
                for beta in mi.box(upper):
                    for theta in mi.box(upper):
                        case = {"alpha": list(alpha), "beta": list(beta), "theta": list(theta)}
                        yield case, lemma3_check(alpha, beta, theta)


class _MonomialPairCheck(IdentityCheck):
    def pairs(self, options):
        arities = (options.n,) if options.n is not None else sorted(ranges.MONOMIAL_PAIR_MAX_EXP)
        for n in arities:
            max_exp = options.pick("max_exp", ranges.MONOMIAL_PAIR_MAX_EXP.get(n, 2))
            pool = sampling.all_monomials(n, max_exp)
            for m1 in pool:
                for m2 in pool:
                    yield m1, m2

    @staticmethod
    def describe(m1, m2) -> Case:
        return {"X": m1.to_text(), "Y": m2.to_text()}

    def verdicts(self, options, check):
        # cases are rendered only when they fail
        for m1, m2 in self.pairs(options):
            ok = check(m1, m2)
            yield (None if ok else self.describe(m1, m2)), ok


class Lemma4Check(_MonomialPairCheck):
    key = "4"
    description = "closed form of (x^a d^b, x^a' d^b')"

    def iter_cases(self, options):
        return self.verdicts(options, lemma4_check)


class Lemma21Check(_MonomialPairCheck):
    key = "21"
    description = "w(X)+w(Y) != 0 implies (X,Y) = 0"

    def iter_cases(self, options):
        return self.verdicts(options, lemma21_check)


class Lemma20Check(IdentityCheck):
    key = "20"
    description = "trace vanishes off weight zero and is bar-invariant"

    def iter_cases(self, options):
        arities = (options.n,) if options.n is not None else sorted(ranges.MONOMIAL_PAIR_MAX_EXP)
        for n in arities:
            max_exp = options.pick("max_exp", ranges.MONOMIAL_PAIR_MAX_EXP.get(n, 2))
            for m in sampling.all_monomials(n, max_exp):
                yield {"X": m.to_text()}, lemma20_check(WeylElement.from_monomial(m))
        rng = options.rng(self.key)
        for s in range(options.pick("samples", ranges.RANDOM_SAMPLES)):
            X = sampling.random_element(rng, options.arity(rng), options.pick("max_exp", ranges.RANDOM_MAX_EXP))
            yield {"sample": s, "X": _text(X)}, lemma20_check(X)


class Lemma98Check(IdentityCheck):
    key = "98"
    description = "det M^(a)(t) = t^C(k+1,2) and its triangular factorization"

    def iter_cases(self, options):
        for a in range(options.pick("max_a", ranges.LEMMA98_MAX_A) + 1):
            for k in range(options.pick("max_k", ranges.LEMMA98_MAX_K) + 1):
                yield {"a": a, "k": k, "identity": "det"}, lemma98_det_check(a, k)
                yield {"a": a, "k": k, "identity": "triangular"}, lemma98_triangular_check(a, k)


class Lemma100Check(IdentityCheck):
    key = "100"
    description = "double-counting polynomial identity"

    def iter_cases(self, options):
        top = options.pick("max_n", ranges.LEMMA100_MAX)
        for a in range(top + 1):
            for b in range(top + 1):
                for c in range(top + 1):
                    yield {"a": a, "b": b, "c": c}, lemma100_check(a, b, c)


class Lemma101Check(IdentityCheck):
    key = "101"
    description = "d = d-tilde"

    def iter_cases(self, options):
        top = options.pick("max_n", ranges.LEMMA101_MAX)
        for a in range(top + 1):
            for b in range(top + 1):
                for c in range(top + 1):
                    yield {"a": a, "b": b, "c": c}, lemma101_check(a, b, c)


class Lemma102Check(IdentityCheck):
    key = "102"
    description = "det M~^(a,k) = x^(a(k+1)) (xy+z)^C(k+1,2)"

    def iter_cases(self, options):
        for a in range(options.pick("max_a", ranges.LEMMA102_MAX_A) + 1):
            for k in range(options.pick("max_k", ranges.LEMMA102_MAX_K) + 1):
                yield {"a": a, "k": k, "identity": "substitution"}, lemma102_substitution_check(a, k)
                yield {"a": a, "k": k, "identity": "det"}, lemma102_det_check(a, k)


class Lemma103Check(IdentityCheck):
    key = "103"
    description = "det N^(a,k) > 0 with closed form; Gram and pairing consistency"

    def iter_cases(self, options):
        max_a = options.pick("max_a", ranges.LEMMA103_MAX_A)
        max_k = options.pick("max_k", ranges.LEMMA103_MAX_K)
        for a in range(max_a + 1):
            for k in range(max_k + 1):
                case = {"a": a, "k": k}
                yield {**case, "identity": "det"}, lemma103_det_check(a, k)
                yield {**case, "identity": "rewrite"}, lemma103_rewrite_check(a, k)
        # Gram and pairing witnesses on the smaller Lemma 104 range
        for a in range(min(max_a, ranges.LEMMA104_MAX_A) + 1):
            for k in range(min(max_k, ranges.LEMMA104_MAX_K) + 1):
                case = {"a": a, "k": k}
                family = [m.monomials()[0] for m in forms.diagonal_family(a, k)]
                gram = forms.gram_euclid(family)
                scaled = forms.build_N(a, k).map(lambda v: sqrt2_power(a) * v, ring="qsqrt2")
                yield {**case, "identity": "gram"}, gram.to_rows() == scaled.to_rows()
                pairing = forms.pairing_matrix(forms.diagonal_family(a, k), forms.dual_family(a, k))
                yield {**case, "identity": "pairing"}, det(pairing) != 0


class Lemma104Check(IdentityCheck):
    key = "104"
    description = "<X,X> = sqrt2^a lambda^T N lambda > 0 on x^(a+i) d^i spans"

    def iter_cases(self, options):
        rng = options.rng(self.key)
        samples = options.pick("samples", ranges.LEMMA104_SAMPLES)
        for a in range(options.pick("max_a", ranges.LEMMA104_MAX_A) + 1):
            for k in range(options.pick("max_k", ranges.LEMMA104_MAX_K) + 1):
                family = [m.monomials()[0] for m in forms.diagonal_family(a, k)]
                yield {"a": a, "k": k, "identity": "sylvester"}, is_positive_definite(forms.gram_euclid(family))
                for _ in range(samples):
                    lambdas = [rng.randint(*ranges.RANDOM_COEFF_RANGE) for _ in range(k + 1)]
                    yield {"a": a, "k": k, "lambdas": lambdas}, lemma104_check(a, lambdas)


class RelationsCheck(IdentityCheck):
    key = "relations"
    description = "[d_i, x_j] = delta_ij and commuting generators"

    def iter_cases(self, options):
        for n in range(1, options.pick("max_n", ranges.RELATIONS_MAX_ARITY) + 1):
            yield {"n": n}, relations_check(n)
        rng = options.rng(self.key)
        for s in range(options.pick("samples", ranges.RANDOM_SAMPLES)):
            m = sampling.random_monomial(rng, options.arity(rng), options.pick("max_exp", ranges.RANDOM_MAX_EXP))
            yield {"sample": s, "X": m.to_text(), "identity": "embedding"}, embedding_check(m)


class CompositionCheck(IdentityCheck):
    key = "composition"
    description = "composition agrees with the action on polynomials"

    def iter_cases(self, options):
        rng = options.rng(self.key)
        max_exp = options.pick("max_exp", ranges.RANDOM_MAX_EXP)
        for s in range(options.pick("samples", ranges.RANDOM_SAMPLES)):
            n = options.arity(rng)
            X = sampling.random_element(rng, n, max_exp)
            Y = sampling.random_element(rng, n, max_exp)
            for _ in range(3):
                f = sampling.random_poly(rng, n)
                case = {"sample": s, "X": _text(X), "Y": _text(Y), "f": f.format()}
                yield case, composition_oracle_check(X, Y, f)


class FrobeniusCheck(IdentityCheck):
    key = "frobenius"
    description = "twisted symmetry, bar symmetry and associativity of (X,Y)"

    def iter_cases(self, options):
        rng = options.rng(self.key)
        max_exp = options.pick("max_exp", ranges.RANDOM_MAX_EXP)
        for s in range(options.pick("samples", ranges.RANDOM_SAMPLES)):
            n = options.arity(rng)
            X = sampling.random_homogeneous(rng, n, max_exp)
            Y = sampling.random_homogeneous(rng, n, max_exp)
            Z = sampling.random_element(rng, n, max_exp)
            lx, ly = X.is_homogeneous(), Y.is_homogeneous()
            case = {"sample": s, "X": _text(X), "Y": _text(Y)}
            xy, yx = forms.frob(X, Y), forms.frob(Y, X)
            yield {**case, "identity": "twisted-symmetry"}, xy == Fraction(2) ** ly * yx
            yield {**case, "identity": "sqrt2-symmetry"}, sqrt2_power(lx) * xy == sqrt2_power(ly) * yx
            yield {**case, "identity": "bar"}, forms.frob(X.bar(), Y.bar()) == yx
            yield (
                {**case, "Z": _text(Z), "identity": "associativity"},
                forms.frob(compose(X, Y), Z) == forms.frob(X, compose(Y, Z)),
            )


class EuclidCheck(IdentityCheck):
    key = "euclid"
    description = "symmetry, invariance, orthogonality and positivity of <X,Y>"

    def iter_cases(self, options):
        rng = options.rng(self.key)
        max_exp = options.pick("max_exp", ranges.RANDOM_MAX_EXP)
        for s in range(options.pick("samples", ranges.RANDOM_SAMPLES)):
            n = options.arity(rng)
            X = sampling.random_element(rng, n, max_exp)
            Y = sampling.random_element(rng, n, max_exp)
            a = sampling.random_homogeneous(rng, n, max_exp, max_terms=2)
            l = a.is_homogeneous()
            case = {"sample": s, "X": _text(X), "Y": _text(Y)}
            xy = forms.euclid(X, Y)
            yield {**case, "identity": "symmetry"}, xy == forms.euclid(Y, X)
            yield {**case, "identity": "bar-invariance"}, xy == forms.euclid(X.bar(), Y.bar())

            with_a = {**case, "a": _text(a)}
            left = forms.euclid(compose(a, X), Y) == sqrt2_power(-l) * forms.euclid(X, compose(a.bar(), Y))
            yield {**with_a, "identity": "left-invariance"}, left
            right = forms.euclid(compose(X, a), Y) == sqrt2_power(l) * forms.euclid(X, compose(Y, a.bar()))
            yield {**with_a, "identity": "right-invariance"}, right
            commutes = forms.euclid(commutator(a, X), Y) == forms.corollary_commutator_rhs(a, X, Y)
            yield {**with_a, "identity": "commutator"}, commutes

            yield {**case, "identity": "self-skew"}, forms.is_orthogonal(X.self_part(), Y.skew_part())
            weights_x, weights_y = X.weight_components(), Y.weight_components()
            cross = all(
                forms.is_orthogonal(px, py)
                for lx, px in weights_x.items() for ly, py in weights_y.items() if lx != ly
            )
            yield {**case, "identity": "weight-orthogonality"}, cross

            norm = forms.norm2(X)
            pieces = sum((forms.norm2(p) for p in X.multiweight_components().values()), QSqrt2.zero())
            by_weight = sum((forms.norm2(p) for p in weights_x.values()), QSqrt2.zero())
            yield {**case, "identity": "pythagoras"}, norm == pieces == by_weight
            yield {**case, "identity": "positivity"}, norm.sign() > 0
            schwarz = norm * forms.norm2(Y) - xy * xy
            yield {**case, "identity": "cauchy-schwarz"}, schwarz.sign() >= 0

            m1 = sampling.random_monomial(rng, n, max_exp)
            m2 = sampling.random_monomial(rng, n, max_exp)
            # bias toward equal multi-weights so the product is often non-zero
            if rng.random() < 0.5:
                omega = m1.multiweight()
                m2 = rng.choice([m for m in sampling.all_monomials(n, max_exp) if m.multiweight() == omega])
            pair = {"sample": s, "X": m1.to_text(), "Y": m2.to_text(), "identity": "decomposable"}
            yield pair, decomposable_product_check(m1, m2)


class GramCheck(IdentityCheck):
    key = "gram"
    description = "Sylvester certificate on random monomial Gram matrices"

    def iter_cases(self, options):
        rng = options.rng(self.key)
        n = options.n if options.n is not None else 2
        max_exp = options.pick("max_exp", ranges.GRAM_MAX_EXP)
        for s in range(options.pick("samples", ranges.GRAM_SAMPLES)):
            size = rng.randint(1, ranges.GRAM_MAX_BASIS)
            basis = sampling.random_basis(rng, n, max_exp, size)
            case = {"sample": s, "basis": [m.to_text() for m in basis]}
            yield case, is_positive_definite(forms.gram_euclid(basis))
        for k in range(options.pick("max_k", ranges.LEMMA103_MAX_K) + 1):
            slice_basis = [m.monomials()[0] for m in forms.diagonal_family(0, k)]
            yield {"k": k, "identity": "weight-zero-slice"}, det(forms.gram_euclid(slice_basis)) != 0


class FubiniCheck(IdentityCheck):
    key = "fubini"
    description = "<(xd)^i, (xd)^(k-i)> = Fubini(k), independent of i"

    def iter_cases(self, options):
        max_k = options.pick("max_k", ranges.FUBINI_MAX_K)
        for k in range(max_k + 1):
            yield {"k": k, "identity": "recurrence"}, fubini(k) == fubini_recurrence(k)
            expected = fubini(k)
            for i in range(k + 1):
                yield {"k": k, "i": i}, forms.euclid_power_pair(i, k) == expected
        for k in range(max_k // 2 + 1):
            yield {"k": k, "identity": "norm-of-power"}, forms.norm2_power_check(k)


class IdentityCheckFactory:
    """
    Factory pattern implementation for identity checks.
    The registry order is the reporting order of the suite.
    """

    _registry: Dict[str, Type[IdentityCheck]] = {
        cls.key: cls
        for cls in (
            Lemma1Check, Corollary2Check, Lemma3Check, Lemma4Check, Lemma20Check, Lemma21Check,
            Lemma98Check, Lemma100Check, Lemma101Check, Lemma102Check, Lemma103Check, Lemma104Check,
            RelationsCheck, CompositionCheck, FrobeniusCheck, EuclidCheck, GramCheck, FubiniCheck,
        )
    }

    @classmethod
    def keys(cls) -> List[str]:
        return list(cls._registry)

    @classmethod
    def create(cls, key: str) -> IdentityCheck:
        try:
            return cls._registry[key]()
        except KeyError:
            raise ValueError(f"Unknown check '{key}', expected one of {', '.join(cls._registry)} or 'all'")


def resolve_keys(selection: Sequence[str]) -> List[str]:
    """Expand 'all' and validate; keeps registry order and drops duplicates."""
    wanted = set()
    for key in selection:
        if key == "all":
            wanted.update(IdentityCheckFactory.keys())
        else:
            IdentityCheckFactory.create(key)
            wanted.add(key)
    return [k for k in IdentityCheckFactory.keys() if k in wanted]


def run_check(key: str, options: Optional[CheckOptions] = None) -> CheckResult:
    return IdentityCheckFactory.create(key).run(options or CheckOptions())


def run_suite(selection: Sequence[str] = ("all",), options: Optional[CheckOptions] = None,
              workers: Optional[int] = None) -> SuiteReport:
    """Run the selected checks concurrently; the report follows registry order."""
    keys = resolve_keys(selection)
    options = options or CheckOptions()
    workers = workers or get_config().check_workers
    logger.info(f"Running {len(keys)} checks with {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_check, key, options) for key in keys]
        report = SuiteReport([f.result() for f in futures])
    failure = report.first_failure()
    if failure is not None:
        logger.warning(f"Suite failed at check {failure.lemma}: {failure.counterexample}")
    return report
