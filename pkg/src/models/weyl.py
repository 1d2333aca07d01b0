"""
The Weyl algebra A_n in the normal-ordered operator model.

A WeylElement is a finite rational combination of monomials x^alpha d^beta
(multiplications to the left of derivations). Composition follows the
gamma-sum rule

    x^a d^b o x^a' d^b' = sum_g g! C(b,g) C(a',g) x^(a+a'-g) d^(b+b'-g),

with g bounded by min(b, a') componentwise. Elements are immutable.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.cache import get_cache
from src.models import multi_index as mi
from src.models.multi_index import MultiIndex
from src.models.polynomial import MultiPoly
from src.models.scalars import format_rat, rat_from_json, rat_to_json, to_rat
from src.utils.errors import ArityMismatchError

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]
MultiWeight = Tuple[int, ...]


@dataclass(frozen=True)
class WeylMonomial:
    """x^alpha d^beta."""

    alpha: MultiIndex
    beta: MultiIndex

    def __post_init__(self):
        alpha = mi.multi_index(self.alpha)
        beta = mi.multi_index(self.beta, len(alpha))
        if not alpha:
            raise ValueError("Weyl monomials need at least one variable")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def unit(cls, n: int) -> "WeylMonomial":
        return cls(mi.zero_index(n), mi.zero_index(n))

    @property
    def n(self) -> int:
        return len(self.alpha)

    def multiweight(self) -> MultiWeight:
        return mi.sub(self.alpha, self.beta)

    def weight(self) -> int:
        return sum(self.alpha) - sum(self.beta)

    def bar(self) -> "WeylMonomial":
        return WeylMonomial(self.beta, self.alpha)

    def is_diagonal(self) -> bool:
        return self.alpha == self.beta

    def sort_key(self) -> Tuple[int, MultiIndex, MultiIndex]:
        return (self.weight(), self.alpha, self.beta)

    def to_text(self) -> str:
        return WeylElement.from_monomial(self).to_text()


def _check_arity(left: int, right: int, what: str = "Weyl elements") -> None:
    if left != right:
        raise ArityMismatchError(left, right, what)


class WeylElement:
    """Sparse rational combination of normal-ordered Weyl monomials."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping[WeylMonomial, Coefficient]] = None):
        if n < 1:
            raise ValueError(f"Arity must be positive, got {n}")
        self.n = n
        canonical: Dict[WeylMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            _check_arity(mono.n, n, "monomial and element")
            value = canonical.get(mono, Fraction(0)) + to_rat(coeff)
            if value:
                canonical[mono] = value
            else:
                canonical.pop(mono, None)
        self._terms = canonical
        self._hash: Optional[int] = None

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n)

    @classmethod
    def scalar(cls, value: Coefficient, n: int) -> "WeylElement":
        return cls(n, {WeylMonomial.unit(n): value})

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls.scalar(1, n)

    @classmethod
    def from_monomial(cls, mono: WeylMonomial, coeff: Coefficient = 1) -> "WeylElement":
        return cls(mono.n, {mono: coeff})

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Sequence[int], coeff: Coefficient = 1) -> "WeylElement":
        return cls.from_monomial(WeylMonomial(tuple(alpha), tuple(beta)), coeff)

    @classmethod
    def x(cls, i: int, n: int) -> "WeylElement":
        """Multiplication by x_i (0-based slot)."""
        return cls.monomial(mi.unit_index(i, n), mi.zero_index(n))

    @classmethod
    def d(cls, i: int, n: int) -> "WeylElement":
        """Derivation d_i (0-based slot)."""
        return cls.monomial(mi.zero_index(n), mi.unit_index(i, n))

    # ---- inspection ---------------------------------------------------

    def items(self) -> Iterator[Tuple[WeylMonomial, Fraction]]:
        return iter(self._terms.items())

    @property
    def terms(self) -> Dict[WeylMonomial, Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[WeylMonomial, Fraction]]:
        """Canonical order: (weight, alpha, beta) ascending."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def monomials(self) -> List[WeylMonomial]:
        return [m for m, _ in self.sorted_terms()]

    def coefficient(self, mono: WeylMonomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # ---- linear structure ---------------------------------------------

    def __add__(self, other: object) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other, self.n)
        if not isinstance(other, WeylElement):
            return NotImplemented
        _check_arity(self.n, other.n)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return WeylElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other, self.n)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "WeylElement":
        return (-self) + other

    def scale(self, factor: Coefficient) -> "WeylElement":
        factor = to_rat(factor)
        if not factor:
            return WeylElement.zero(self.n)
        return WeylElement(self.n, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, factor: object) -> "WeylElement":
        # scalar multiplication only; operator products use '@'
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: object) -> "WeylElement":
        if not isinstance(other, WeylElement):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, exponent: int) -> "WeylElement":
        return compose_power(self, exponent)

    # ---- gradings and involution ---------------------------------------

    def multiweight_components(self) -> Dict[MultiWeight, "WeylElement"]:
        buckets: Dict[MultiWeight, Dict[WeylMonomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            buckets.setdefault(mono.multiweight(), {})[mono] = coeff
        return {w: WeylElement(self.n, t) for w, t in sorted(buckets.items())}

    def weight_components(self) -> Dict[int, "WeylElement"]:
        buckets: Dict[int, Dict[WeylMonomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            buckets.setdefault(mono.weight(), {})[mono] = coeff
        return {l: WeylElement(self.n, t) for l, t in sorted(buckets.items())}

    def project_multiweight(self, omega: Sequence[int]) -> "WeylElement":
        omega = tuple(omega)
        _check_arity(len(omega), self.n, "multi-weight and element")
        return WeylElement(self.n, {m: c for m, c in self._terms.items() if m.multiweight() == omega})

    def project_weight(self, l: int) -> "WeylElement":
        return WeylElement(self.n, {m: c for m, c in self._terms.items() if m.weight() == l})

    def is_homogeneous(self) -> Optional[int]:
        """The common weight of all terms, or None (also for zero)."""
        weights = {m.weight() for m in self._terms}
        return weights.pop() if len(weights) == 1 else None

    def homogeneous_multiweight(self) -> Optional[MultiWeight]:
        weights = {m.multiweight() for m in self._terms}
        return weights.pop() if len(weights) == 1 else None

    def bar(self) -> "WeylElement":
        return WeylElement(self.n, {m.bar(): c for m, c in self._terms.items()})

    def self_part(self) -> "WeylElement":
        return (self + self.bar()).scale(Fraction(1, 2))

    def skew_part(self) -> "WeylElement":
        return (self - self.bar()).scale(Fraction(1, 2))

    def apply(self, p: MultiPoly) -> MultiPoly:
        return apply(self, p)

    # ---- equality and display ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeylElement):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == WeylElement.scalar(other, self.n)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def variable_names(self) -> Tuple[List[str], List[str]]:
        if self.n == 1:
            return ["x"], ["d"]
        return [f"x{i}" for i in range(1, self.n + 1)], [f"d{i}" for i in range(1, self.n + 1)]

    def to_text(self) -> str:
        """Canonical text in (weight, alpha, beta) order, e.g. "-d1 + 3 + 1/2*x1^2*d2"."""
        if not self._terms:
            return "0"
        xs, ds = self.variable_names()
        pieces: List[str] = []
        for mono, coeff in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(xs, mono.alpha) if e]
            factors += [n if e == 1 else f"{n}^{e}" for n, e in zip(ds, mono.beta) if e]
            magnitude = abs(coeff)
            if not factors:
                body = format_rat(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rat(magnitude)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"WeylElement({self.n}, {self.to_text()!r})"

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "terms": [
                {"alpha": list(m.alpha), "beta": list(m.beta), "coeff": rat_to_json(c)}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "WeylElement":
        n = int(data["n"])  # type: ignore[arg-type]
        terms = {
            WeylMonomial(tuple(t["alpha"]), tuple(t["beta"])): rat_from_json(t["coeff"])
            for t in data["terms"]  # type: ignore[union-attr]
        }
        return cls(n, terms)


class WeylElementBuilder:
    """
    Builder pattern implementation for WeylElement.
    Provides a fluent interface for assembling an element term by term.
    """

    def __init__(self, n: int):
        self._n = n
        self.reset()

    def reset(self) -> "WeylElementBuilder":
        self._terms: Dict[WeylMonomial, Fraction] = {}
        return self

    def term(self, alpha: Sequence[int], beta: Sequence[int], coeff: Coefficient = 1) -> "WeylElementBuilder":
        mono = WeylMonomial(tuple(alpha), tuple(beta))
        _check_arity(mono.n, self._n, "monomial and builder")
        self._terms[mono] = self._terms.get(mono, Fraction(0)) + to_rat(coeff)
        return self

    def monomial(self, mono: WeylMonomial, coeff: Coefficient = 1) -> "WeylElementBuilder":
        return self.term(mono.alpha, mono.beta, coeff)

    def constant(self, coeff: Coefficient) -> "WeylElementBuilder":
        zero = mi.zero_index(self._n)
        return self.term(zero, zero, coeff)

    def build(self) -> WeylElement:
        element = WeylElement(self._n, self._terms)
        self.reset()
        return element


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _monom_compose_terms(m1: WeylMonomial, m2: WeylMonomial) -> Dict[WeylMonomial, int]:
    bound = tuple(min(b, a2) for b, a2 in zip(m1.beta, m2.alpha))
    terms: Dict[WeylMonomial, int] = {}
    for gamma in mi.box(bound):
        coeff = (
            mi.multi_factorial(gamma)
            * mi.multi_binom(m1.beta, gamma)
            * mi.multi_binom(m2.alpha, gamma)
        )
        alpha = mi.sub(mi.add(m1.alpha, m2.alpha), gamma)
        beta = mi.sub(mi.add(m1.beta, m2.beta), gamma)
        terms[WeylMonomial(alpha, beta)] = coeff
    return terms


def monom_compose(m1: WeylMonomial, m2: WeylMonomial) -> WeylElement:
    """x^a d^b o x^a' d^b' via the gamma sum; coefficients are positive integers."""
    _check_arity(m1.n, m2.n, "monomials")
    key = (m1.alpha, m1.beta, m2.alpha, m2.beta)
    terms = get_cache("monom_compose").get_or_compute(key, lambda: _monom_compose_terms(m1, m2))
    return WeylElement(m1.n, terms)


def compose(X: WeylElement, Y: WeylElement) -> WeylElement:
    """Bilinear extension of monom_compose."""
    _check_arity(X.n, Y.n)
    table = get_cache("monom_compose")
    acc: Dict[WeylMonomial, Fraction] = {}
    for m1, c1 in X.items():
        for m2, c2 in Y.items():
            key = (m1.alpha, m1.beta, m2.alpha, m2.beta)
            product = table.get_or_compute(key, lambda: _monom_compose_terms(m1, m2))
            scale = c1 * c2
            for mono, coeff in product.items():
                acc[mono] = acc.get(mono, Fraction(0)) + scale * coeff
    return WeylElement(X.n, acc)


def compose_power(X: WeylElement, k: int) -> WeylElement:
    """X o X o ... o X (k factors); X^0 is the unit."""
    if k < 0:
        raise ValueError(f"Composition power must be non-negative, got {k}")
    result = WeylElement.one(X.n)
    for _ in range(k):
        result = compose(result, X)
    return result


def commutator(a: WeylElement, X: WeylElement) -> WeylElement:
    """[a, X] = a o X - X o a."""
    return compose(a, X) - compose(X, a)


def add(X: WeylElement, Y: WeylElement) -> WeylElement:
    return X + Y


def scale(c: Coefficient, X: WeylElement) -> WeylElement:
    return X.scale(c)


def multiweight(m: WeylMonomial) -> MultiWeight:
    return m.multiweight()


def weight(m: WeylMonomial) -> int:
    return m.weight()


def project_multiweight(X: WeylElement, omega: Sequence[int]) -> WeylElement:
    return X.project_multiweight(omega)


def project_weight(X: WeylElement, l: int) -> WeylElement:
    return X.project_weight(l)


def is_homogeneous(X: WeylElement) -> Optional[int]:
    return X.is_homogeneous()


def bar(X: WeylElement) -> WeylElement:
    return X.bar()


def self_part(X: WeylElement) -> WeylElement:
    return X.self_part()


def skew_part(X: WeylElement) -> WeylElement:
    return X.skew_part()


def apply(X: WeylElement, p: MultiPoly) -> MultiPoly:
    """Action of X as a differential operator on the polynomial p."""
    _check_arity(X.n, p.arity, "operator and polynomial")
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for mono, coeff in X.items():
        for theta, pc in p.items():
            factor = 1
            for t, b in zip(theta, mono.beta):
                factor *= mi.falling_factorial(t, b)
                if not factor:
                    break
            if not factor:
                continue
            exps = tuple(t - b + a for t, b, a in zip(theta, mono.beta, mono.alpha))
            acc[exps] = acc.get(exps, Fraction(0)) + coeff * pc * factor
    return MultiPoly(p.arity, acc)


def factor_monomial(m: WeylMonomial) -> List[Tuple[int, WeylMonomial]]:
    """Slot-wise factors X^(i) = x_i^alpha_i d_i^beta_i as arity-1 monomials."""
    return [(i, WeylMonomial((a,), (b,))) for i, (a, b) in enumerate(zip(m.alpha, m.beta))]


def embed_factor(slot: int, factor: WeylMonomial, n: int) -> WeylElement:
    """Lift an arity-1 monomial into slot `slot` of A_n."""
    if factor.n != 1:
        raise ArityMismatchError(factor.n, 1, "factor and A_1")
    if not 0 <= slot < n:
        raise ValueError(f"Slot {slot} out of range for arity {n}")
    alpha = tuple(factor.alpha[0] if i == slot else 0 for i in range(n))
    beta = tuple(factor.beta[0] if i == slot else 0 for i in range(n))
    return WeylElement.monomial(alpha, beta)


def relations_check(n: int) -> bool:
    """[d_i, x_j] = delta_ij, [x_i, x_j] = 0 and [d_i, d_j] = 0 hold in A_n."""
    one = WeylElement.one(n)
    zero = WeylElement.zero(n)
    for i in range(n):
        for j in range(n):
            expected = one if i == j else zero
            if commutator(WeylElement.d(i, n), WeylElement.x(j, n)) != expected:
                logger.warning(f"[d{i + 1}, x{j + 1}] failed in A_{n}")
                return False
            if commutator(WeylElement.x(i, n), WeylElement.x(j, n)) != zero:
                return False
            if commutator(WeylElement.d(i, n), WeylElement.d(j, n)) != zero:
                return False
    return True


def generator_x(i: int, n: int) -> WeylElement:
    return WeylElement.x(i, n)


def generator_d(i: int, n: int) -> WeylElement:
    return WeylElement.d(i, n)
