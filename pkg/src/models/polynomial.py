"""
Sparse multivariate polynomials with rational coefficients.

A MultiPoly maps exponent vectors (tuples of length `arity`) to non-zero
Fractions. Values are immutable; every operation returns a new canonical
polynomial with no stored zero coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.models.scalars import format_rat, rat_from_json, rat_to_json, to_rat
from src.utils.errors import ArityMismatchError, EncodingError, ExactDivisionError

Exponents = Tuple[int, ...]
Coefficient = Union[int, Fraction]


def default_names(arity: int) -> Tuple[str, ...]:
    if arity <= 3:
        return ("x", "y", "z")[:arity]
    if arity == 4:
        return ("x", "y", "z", "t")
    return tuple(f"x{i}" for i in range(1, arity + 1))


def grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    """Graded lexicographic key: total degree first, then lexicographic."""
    return (sum(exponents), exponents)


class MultiPoly:
    """Sparse polynomial over BigRat in a fixed number of variables."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Optional[Mapping[Exponents, Coefficient]] = None):
        if arity < 1:
            raise ValueError(f"Polynomial arity must be positive, got {arity}")
        self.arity = arity
        canonical: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise ArityMismatchError(len(exps), arity, "exponent vector and polynomial")
            if any(e < 0 for e in exps):
                raise ValueError(f"Negative exponent in {exps}")
            value = canonical.get(exps, Fraction(0)) + to_rat(coeff)
            if value:
                canonical[exps] = value
            else:
                canonical.pop(exps, None)
        self._terms = canonical
        self._hash: Optional[int] = None

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity)

    @classmethod
    def constant(cls, value: Coefficient, arity: int) -> "MultiPoly":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def one(cls, arity: int) -> "MultiPoly":
        return cls.constant(1, arity)

    @classmethod
    def variable(cls, index: int, arity: int) -> "MultiPoly":
        """The coordinate polynomial for variable `index` (0-based)."""
        if not 0 <= index < arity:
            raise ValueError(f"Variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Coefficient = 1) -> "MultiPoly":
        return cls(len(exponents), {tuple(exponents): coeff})

    # ---- inspection ---------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Exponents, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("Zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    # ---- arithmetic ---------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise ArityMismatchError(self.arity, other.arity, "polynomials")

    def _coerce(self, other: object) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.arity)
        return None

    def __add__(self, other: object) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in rhs._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "MultiPoly":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, Fraction(0)) + c1 * c2
        return MultiPoly(self.arity, terms)

    __rmul__ = __mul__

    def scale(self, factor: Coefficient) -> "MultiPoly":
        factor = to_rat(factor)
        if not factor:
            return MultiPoly.zero(self.arity)
        return MultiPoly(self.arity, {e: c * factor for e, c in self._terms.items()})

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError(f"Polynomial power must be non-negative, got {exponent}")
        result = MultiPoly.one(self.arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ExactDivisionError otherwise."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        lead_exps, lead_coeff = divisor.leading_term()
        remainder = self
        quotient: Dict[Exponents, Fraction] = {}
        while not remainder.is_zero():
            exps, coeff = remainder.leading_term()
            shift = tuple(a - b for a, b in zip(exps, lead_exps))
            if any(s < 0 for s in shift):
                raise ExactDivisionError("Polynomial division is not exact")
            factor = coeff / lead_coeff
            quotient[shift] = quotient.get(shift, Fraction(0)) + factor
            remainder = remainder - divisor * MultiPoly(self.arity, {shift: factor})
        return MultiPoly(self.arity, quotient)

    def eval(self, point: Sequence[Coefficient]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.arity:
            raise ArityMismatchError(len(point), self.arity, "evaluation point and polynomial")
        values = [to_rat(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for value, e in zip(values, exps):
                if e:
                    term *= value ** e
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with polynomials: variable i is replaced by images[i]."""
        if len(images) != self.arity:
            raise ArityMismatchError(len(images), self.arity, "substitution and polynomial")
        target = images[0].arity
        result = MultiPoly.zero(target)
        for exps, coeff in self._terms.items():
            term = MultiPoly.constant(coeff, target)
            for image, e in zip(images, exps):
                if e:
                    term = term * image ** e
            result = result + term
        return result

    # ---- equality and display ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.arity)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Text such as "2*x^2*y + z"; terms in descending graded lex order."""
        if not self._terms:
            return "0"
        names = tuple(names) if names else default_names(self.arity)
        if len(names) != self.arity:
            raise ArityMismatchError(len(names), self.arity, "variable names and polynomial")
        pieces: List[str] = []
        for exps, coeff in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps) if e
            ]
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
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.arity}, {self.format()!r})"

    def to_dict(self) -> Dict[str, object]:
        return {
            "arity": self.arity,
            "terms": [
                {"exponents": list(exps), "coeff": rat_to_json(coeff)}
                for exps, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "MultiPoly":
        try:
            terms = {
                tuple(int(e) for e in term["exponents"]): rat_from_json(term["coeff"])
                for term in data["terms"]  # type: ignore[union-attr]
            }
            arity = int(data["arity"])  # type: ignore[call-overload]
        except EncodingError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise EncodingError(f"Invalid polynomial {data!r}: expected {{arity, terms}}") from e
        return cls(arity, terms)


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_pow(p: MultiPoly, exponent: int) -> MultiPoly:
    return p ** exponent


def poly_scale(p: MultiPoly, factor: Coefficient) -> MultiPoly:
    return p.scale(factor)


def poly_eval(p: MultiPoly, point: Sequence[Coefficient]) -> Fraction:
    return p.eval(point)

