"""
Forme bilineari sull'algebra di Weyl: traccia, forma di Frobenius, forma euclidea.

    T(x^a d^b)  = a! if a == b, else 0
    (X, Y)      = T(X o Y)                          rational
    <X, Y>      = sum_w sqrt2^l(w) (X_w, bar(Y_w))  in Q[sqrt2]

plus the Gram families N, M and M-tilde and the pairing matrices used to
witness non-degeneracy on finite spans.
"""
import logging
from fractions import Fraction
from math import comb, factorial
from typing import Callable, List, Sequence, Tuple

from src.cache import get_cache
from src.models import multi_index as mi
from src.models.matrix import ExactMatrix
from src.models.multi_index import MultiIndex
from src.models.scalars import QSqrt2, sqrt2_power
from src.models.weyl import WeylElement, WeylMonomial, compose, compose_power
from src.services.combinatorics import d_poly, d_tilde_poly, eta, fubini, mu_poly
from src.utils.errors import ArityMismatchError, DuplicateBasisError

logger = logging.getLogger(__name__)


def _check_arity(X: WeylElement, Y: WeylElement) -> None:
    if X.n != Y.n:
        raise ArityMismatchError(X.n, Y.n, "form arguments")


def trace(X: WeylElement) -> Fraction:
    """Linear functional T: coeff * alpha! on diagonal monomials."""
    return sum(
        (coeff * mi.multi_factorial(mono.alpha) for mono, coeff in X.items() if mono.is_diagonal()),
        Fraction(0),
    )


def frob(X: WeylElement, Y: WeylElement) -> Fraction:
    """Frobenius form (X, Y) = T(X o Y)."""
    _check_arity(X, Y)
    return trace(compose(X, Y))


def _frob_coordinate(a: int, b: int, a2: int, b2: int) -> int:
    total = 0
    for g in range(min(b, a2) + 1):
        # only diagonal terms of the gamma sum carry trace
        if a + a2 - g == b + b2 - g:
            total += factorial(g) * comb(b, g) * comb(a2, g) * factorial(a + a2 - g)
    return total


def frob_monomials(m1: WeylMonomial, m2: WeylMonomial) -> int:
    """
    (m1, m2) from the trace of the gamma sum alone, without building X o Y.

    The gamma box and the trace both factor over coordinates, so the form is
    the product of one-variable sums.
    """
    if m1.n != m2.n:
        raise ArityMismatchError(m1.n, m2.n, "form arguments")
    table = get_cache("frob_coordinate")
    value = 1
    for key in zip(m1.alpha, m1.beta, m2.alpha, m2.beta):
        factor = table.get_or_compute(key, lambda: _frob_coordinate(*key))
        if not factor:
            return 0
        value *= factor
    return value


def frob_pair_closed(alpha: MultiIndex, beta: MultiIndex, alpha2: MultiIndex, beta2: MultiIndex) -> Fraction:
    """(x^a d^b, x^a' d^b') without composing: zero unless a+a' = b+b' = theta."""
    n = len(alpha)
    for other in (beta, alpha2, beta2):
        if len(other) != n:
            raise ArityMismatchError(len(other), n, "multi-indices")
    theta = mi.add(alpha, alpha2)
    if theta != mi.add(beta, beta2):
        return Fraction(0)
    total = Fraction(0)
    for gamma in mi.box(beta):
        total += mi.multi_binom(mi.sub(theta, gamma), alpha) * mi.multi_binom(beta, gamma)
    return mi.multi_factorial(theta) * total / mi.multi_binom(theta, alpha)


def euclid(X: WeylElement, Y: WeylElement) -> QSqrt2:
    """Euclid form, summed over the multi-weights common to X and Y."""
    _check_arity(X, Y)
    right = Y.multiweight_components()
    total = QSqrt2.zero()
    for omega, x_part in X.multiweight_components().items():
        y_part = right.get(omega)
        if y_part is None:
            continue
        total = total + sqrt2_power(sum(omega)) * frob(x_part, y_part.bar())
    return total


def norm2(X: WeylElement) -> QSqrt2:
    """|X|^2 = <X, X>."""
    return euclid(X, X)


def is_orthogonal(X: WeylElement, Y: WeylElement) -> bool:
    return euclid(X, Y).is_zero()


def gram_matrix(elements: Sequence[WeylElement], form: Callable[[WeylElement, WeylElement], object],
                ring: str) -> ExactMatrix:
    size = len(elements)
    if not size:
        raise ValueError("Gram matrices need a non-empty list")
    for e in elements[1:]:
        _check_arity(elements[0], e)
    return ExactMatrix.from_function(size, lambda i, j: form(elements[i], elements[j]), ring=ring)


def gram_euclid(basis: Sequence[WeylMonomial]) -> ExactMatrix:
    """Euclid Gram matrix of distinct monomials."""
    if len(set(basis)) != len(basis):
        raise DuplicateBasisError("Gram basis contains repeated monomials")
    elements = [WeylElement.from_monomial(m) for m in basis]
    gram = gram_matrix(elements, euclid, ring="qsqrt2")
    gram.header["basis"] = [m.to_text() for m in basis]
    return gram


def pairing_matrix(left: Sequence[WeylElement], right: Sequence[WeylElement]) -> ExactMatrix:
    """((l_i, r_j)) under the Frobenius form."""
    if not left or not right:
        raise ValueError("Pairing matrices need non-empty lists")
    for e in list(left) + list(right):
        _check_arity(left[0], e)
    return ExactMatrix([[frob(l, r) for r in right] for l in left], ring="rat")


def diagonal_family(a: int, k: int) -> List[WeylElement]:
    """x^(a+i) d^i for 0 <= i <= k, arity 1."""
    return [WeylElement.monomial((a + i,), (i,)) for i in range(k + 1)]


def dual_family(a: int, k: int) -> List[WeylElement]:
    """x^j d^(a+j) for 0 <= j <= k, arity 1."""
    return [WeylElement.monomial((j,), (a + j,)) for j in range(k + 1)]


def build_N(a: int, k: int) -> ExactMatrix:
    _check_family(a, k)
    return ExactMatrix.from_function(k + 1, lambda i, j: eta(a, 0, i, j), ring="int",
                                     header={"family": "N", "a": a, "k": k})


def n_det_closed_form(a: int, k: int) -> int:
    """(prod_i i!)(prod_j (a+j)!) 2^(k(k+1)/2)."""
    value = 2 ** (k * (k + 1) // 2)
    for i in range(k + 1):
        value *= factorial(i) * factorial(a + i)
    return value


def build_M(a: int, k: int) -> ExactMatrix:
    """Entries mu_{i,j}(t)."""
    _check_family(a, k)
    return ExactMatrix.from_function(k + 1, lambda i, j: mu_poly(a, i, j), ring="poly",
                                     header={"family": "M", "a": a, "k": k, "names": ["t"]})


def build_Mtilde(a: int, k: int) -> ExactMatrix:
    """Entries d-tilde^{(a)}_{a+j,i}(x,y,z)."""
    _check_family(a, k)
    return ExactMatrix.from_function(k + 1, lambda i, j: d_tilde_poly(a + j, i, a), ring="poly",
                                     header={"family": "Mtilde", "a": a, "k": k})


def build_Md(a: int, k: int) -> ExactMatrix:
    """Entries d^{(a)}_{a+j,i}(x,y,z); equal entrywise to build_Mtilde."""
    _check_family(a, k)
    return ExactMatrix.from_function(k + 1, lambda i, j: d_poly(a + j, i, a), ring="poly",
                                     header={"family": "Md", "a": a, "k": k})


def _check_family(a: int, k: int) -> None:
    if a < 0 or k < 0:
        raise ValueError(f"Family parameters must be non-negative, got a={a}, k={k}")


def lemma104_quadratic(a: int, lambdas: Sequence[int]) -> Tuple[QSqrt2, QSqrt2]:
    """(|X|^2, sqrt2^a lambda^T N lambda) for X = sum lambda_i x^(a+i) d^i."""
    k = len(lambdas) - 1
    if k < 0:
        raise ValueError("At least one coefficient is required")
    X = WeylElement.zero(1)
    for coeff, mono in zip(lambdas, diagonal_family(a, k)):
        X = X + mono.scale(coeff)
    n_matrix = build_N(a, k)
    quadratic = sum(
        (Fraction(lambdas[i]) * lambdas[j] * n_matrix[i, j] for i in range(k + 1) for j in range(k + 1)),
        Fraction(0),
    )
    return norm2(X), sqrt2_power(a) * quadratic


def corollary_commutator_rhs(a: WeylElement, X: WeylElement, Y: WeylElement) -> QSqrt2:
    """sqrt2^-l(a) <X, bar(a) o Y> - sqrt2^l(a) <X, Y o bar(a)> for weight-homogeneous a."""
    l = a.is_homogeneous()
    if l is None:
        raise ValueError("The commutator identity needs a non-zero weight-homogeneous a")
    a_bar = a.bar()
    return sqrt2_power(-l) * euclid(X, compose(a_bar, Y)) - sqrt2_power(l) * euclid(X, compose(Y, a_bar))


def x_d(n: int = 1) -> WeylElement:
    """x d (arity 1) or x1 d1 in A_n."""
    return WeylElement.monomial(mi.unit_index(0, n), mi.unit_index(0, n))


def euclid_power_pair(i: int, k: int) -> QSqrt2:
    """<(x d)^i, (x d)^(k-i)>."""
    base = x_d()
    return euclid(compose_power(base, i), compose_power(base, k - i))


def norm2_power_check(k: int) -> bool:
    """|(x d)^k|^2 = Fubini(2k)."""
    return norm2(compose_power(x_d(), k)) == fubini(2 * k)
