"""
Sintassi testuale degli elementi di Weyl e dei polinomi.

Weyl grammar (precedence '^' > '*' > '@' > '+'/'-'):

    expr    :: ['+'|'-'] comp (('+'|'-') comp)*
    comp    :: product ('@' product)*
    product :: factor ('*' factor)*
    factor  :: atom ['^' integer]
    atom    :: rational | x<i> | d<i> | '(' expr ')'

A '*'-product of variables denotes the normal-ordered monomial, so every x
factor must precede every d factor; operator products are written with '@'.
'(' expr ')' '^' k is a composition power. Plain x and d are only valid when
the arity is 1.

Parsing builds a small tree first; every semantic error is raised while
evaluating that tree, with the column of the offending token.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pyparsing as pp

from src.models.polynomial import MultiPoly, default_names
from src.models.weyl import MultiWeight, WeylElement, compose, compose_power
from src.utils.errors import (
    ExpressionSyntaxError, InconsistentArityError, NegativeExponentError, NormalOrderError,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    loc: int


@dataclass(frozen=True)
class Var:
    name: str
    index: Optional[int]  # None for plain x / d
    loc: int


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    loc: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]
    loc: int


@dataclass(frozen=True)
class Compose:
    operands: Tuple["Node", ...]
    loc: int


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]
    loc: int


@dataclass(frozen=True)
class Paren:
    inner: "Node"
    loc: int


Node = Union[Num, Var, Power, Product, Compose, Sum, Paren]


def _make_number(s: str, loc: int, toks: pp.ParseResults) -> Num:
    _, _, denominator = toks[0].partition("/")
    if denominator and int(denominator) == 0:
        raise pp.ParseFatalException(s, loc, f"Zero denominator in '{toks[0]}'")
    return Num(Fraction(toks[0]), loc)


def _build_grammar(variable: pp.ParserElement) -> pp.ParserElement:
    expr = pp.Forward()
    number = pp.Regex(r"\d+(/\d+)?").set_parse_action(_make_number)
    exponent = pp.Regex(r"-?\d+")
    lpar = pp.Literal("(").set_parse_action(lambda s, l, t: l)
    group = (lpar + expr + pp.Suppress(")")).set_parse_action(lambda s, l, t: Paren(t[1], t[0]))
    atom = number | variable | group

    def make_power(s, loc, toks):
        node = toks[0]
        if len(toks) == 1:
            return node
        return Power(node, int(toks[2]), loc)

    factor = (atom + pp.Optional(pp.Literal("^") + exponent)).set_parse_action(make_power)

    def fold(cls):
        def action(s, loc, toks):
            items = [t for t in toks if not isinstance(t, str)]
            return items[0] if len(items) == 1 else cls(tuple(items), loc)
        return action

    product = (factor + pp.ZeroOrMore(pp.Suppress("*") + factor)).set_parse_action(fold(Product))
    comp = (product + pp.ZeroOrMore(pp.Suppress("@") + product)).set_parse_action(fold(Compose))

    def make_sum(s, loc, toks):
        terms: List[Tuple[int, Node]] = []
        sign = 1
        for t in toks:
            if t in ("+", "-"):
                sign = -1 if t == "-" else 1
            else:
                terms.append((sign, t))
                sign = 1
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), loc)

    sign = pp.one_of("+ -")
    expr <<= (pp.Optional(sign) + comp + pp.ZeroOrMore(sign + comp)).set_parse_action(make_sum)
    return expr


_WEYL_VARIABLE = pp.Regex(r"[xd](\d+)?").set_parse_action(
    lambda s, l, t: Var(t[0][0], int(t[0][1:]) if len(t[0]) > 1 else None, l)
)
_WEYL_GRAMMAR = _build_grammar(_WEYL_VARIABLE)

_POLY_VARIABLE = pp.Regex(r"[a-z][a-z0-9]*").set_parse_action(lambda s, l, t: Var(t[0], None, l))
_POLY_GRAMMAR = _build_grammar(_POLY_VARIABLE)


def _parse_tree(grammar: pp.ParserElement, text: str) -> Node:
    if not text or not text.strip():
        raise ExpressionSyntaxError("Empty expression", 0)
    try:
        return grammar.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(f"Syntax error: {e.msg}", e.loc) from None


def _walk(node: Node):
    yield node
    if isinstance(node, Power):
        yield from _walk(node.base)
    elif isinstance(node, Paren):
        yield from _walk(node.inner)
    elif isinstance(node, (Product, Compose)):
        for child in (node.factors if isinstance(node, Product) else node.operands):
            yield from _walk(child)
    elif isinstance(node, Sum):
        for _, child in node.terms:
            yield from _walk(child)


# ---------------------------------------------------------------------------
# Weyl elements
# ---------------------------------------------------------------------------

def _resolve_arity(tree: Node, n: Optional[int]) -> int:
    variables = [v for v in _walk(tree) if isinstance(v, Var)]
    plain = [v for v in variables if v.index is None]
    indexed = [v for v in variables if v.index is not None]
    for v in indexed:
        if v.index < 1:
            raise InconsistentArityError(f"Variable index must start at 1, got {v.name}{v.index}", v.loc)
    seen = max((v.index for v in indexed), default=1)
    arity = n if n is not None else seen
    if arity < 1:
        raise InconsistentArityError(f"Arity must be positive, got {arity}", 0)
    if plain and arity != 1:
        raise InconsistentArityError(
            f"Plain '{plain[0].name}' is only valid in A_1; use {plain[0].name}1..{plain[0].name}{arity}",
            plain[0].loc,
        )
    for v in indexed:
        if v.index > arity:
            raise InconsistentArityError(f"{v.name}{v.index} exceeds the arity {arity}", v.loc)
    return arity


class _WeylEvaluator:
    def __init__(self, n: int):
        self.n = n

    def eval(self, node: Node) -> WeylElement:
        if isinstance(node, Num):
            return WeylElement.scalar(node.value, self.n)
        if isinstance(node, Var):
            return self._monomial([(node, 1)], Fraction(1))
        if isinstance(node, Paren):
            return self.eval(node.inner)
        if isinstance(node, Power):
            if node.exponent < 0:
                raise NegativeExponentError(f"Negative exponent {node.exponent}", node.loc)
            if isinstance(node.base, Num):
                return WeylElement.scalar(node.base.value ** node.exponent, self.n)
            if isinstance(node.base, Var):
                return self._monomial([(node.base, node.exponent)], Fraction(1))
            return compose_power(self.eval(node.base), node.exponent)
        if isinstance(node, Product):
            return self._product(node)
        if isinstance(node, Compose):
            result = self.eval(node.operands[0])
            for operand in node.operands[1:]:
                result = compose(result, self.eval(operand))
            return result
        total = WeylElement.zero(self.n)
        for sign, term in node.terms:
            value = self.eval(term)
            total = total + value if sign > 0 else total - value
        return total

    def _product(self, node: Product) -> WeylElement:
        coeff = Fraction(1)
        powers: List[Tuple[Var, int]] = []
        groups: List[WeylElement] = []
        for factor in node.factors:
            base, exponent = (factor.base, factor.exponent) if isinstance(factor, Power) else (factor, 1)
            if exponent < 0:
                raise NegativeExponentError(f"Negative exponent {exponent}", factor.loc)
            if isinstance(base, Num):
                coeff *= base.value ** exponent
            elif isinstance(base, Var):
                powers.append((base, exponent))
            else:
                groups.append(self.eval(factor))
        if groups and (powers or len(groups) > 1):
            raise NormalOrderError(
                "'*' joins a parenthesized group with an operator; write operator products with '@'",
                node.loc,
            )
        if groups:
            return groups[0].scale(coeff)
        return self._monomial(powers, coeff)

    def _monomial(self, powers: Sequence[Tuple[Var, int]], coeff: Fraction) -> WeylElement:
        alpha = [0] * self.n
        beta = [0] * self.n
        derivative_seen = False
        for var, exponent in powers:
            slot = (var.index or 1) - 1
            if var.name == "x":
                if derivative_seen and exponent:
                    raise NormalOrderError(
                        "x factor after a d factor breaks normal order; use '@' for operator products",
                        var.loc,
                    )
                alpha[slot] += exponent
            else:
                derivative_seen = derivative_seen or exponent > 0
                beta[slot] += exponent
        return WeylElement.monomial(tuple(alpha), tuple(beta), coeff)


def parse(text: str, n: Optional[int] = None) -> WeylElement:
    """Parse a Weyl expression; the arity defaults to the largest variable index."""
    tree = _parse_tree(_WEYL_GRAMMAR, text)
    arity = _resolve_arity(tree, n)
    element = _WeylEvaluator(arity).eval(tree)
    logger.debug(f"Parsed {text!r} as {element.to_text()!r} in A_{arity}")
    return element


def format(X: WeylElement) -> str:  # noqa: A001 - public name of the operation
    """Canonical text; parse(format(X), X.n) == X."""
    return X.to_text()


def parse_monomial_list(text: str, n: Optional[int] = None) -> List[WeylElement]:
    """';'-separated expressions sharing one arity (the largest index seen if n is None)."""
    parts = [p for p in (s.strip() for s in text.split(";")) if p]
    if not parts:
        raise ExpressionSyntaxError("Empty basis", 0)
    if n is None:
        trees = [_parse_tree(_WEYL_GRAMMAR, p) for p in parts]
        n = max(_resolve_arity(t, None) for t in trees)
    return [parse(p, n) for p in parts]


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly_names(arity: int) -> Dict[str, int]:
    """Accepted variable names: the display names plus x1..xn."""
    names = {name: i for i, name in enumerate(default_names(arity))}
    names.update({f"x{i}": i - 1 for i in range(1, arity + 1)})
    return names


class _PolyEvaluator:
    def __init__(self, arity: int, names: Dict[str, int]):
        self.arity = arity
        self.names = names

    def eval(self, node: Node) -> MultiPoly:
        if isinstance(node, Num):
            return MultiPoly.constant(node.value, self.arity)
        if isinstance(node, Var):
            if node.name not in self.names:
                raise ExpressionSyntaxError(f"Unknown variable '{node.name}'", node.loc)
            return MultiPoly.variable(self.names[node.name], self.arity)
        if isinstance(node, Paren):
            return self.eval(node.inner)
        if isinstance(node, Power):
            if node.exponent < 0:
                raise NegativeExponentError(f"Negative exponent {node.exponent}", node.loc)
            return self.eval(node.base) ** node.exponent
        if isinstance(node, Product):
            result = MultiPoly.one(self.arity)
            for factor in node.factors:
                result = result * self.eval(factor)
            return result
        if isinstance(node, Compose):
            raise ExpressionSyntaxError("'@' is not defined for polynomials", node.loc)
        total = MultiPoly.zero(self.arity)
        for sign, term in node.terms:
            value = self.eval(term)
            total = total + value if sign > 0 else total - value
        return total


def parse_poly(text: str, arity: int, names: Optional[Sequence[str]] = None) -> MultiPoly:
    """Parse "2*x^2*y + z" style text into a polynomial of the given arity."""
    mapping = {name: i for i, name in enumerate(names)} if names else poly_names(arity)
    tree = _parse_tree(_POLY_GRAMMAR, text)
    return _PolyEvaluator(arity, mapping).eval(tree)


def parse_multiweight(text: str) -> MultiWeight:
    """Parse "1,-2" into (1, -2); entries may be negative."""
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ExpressionSyntaxError(f"Malformed multi-weight '{text}'", 0) from None
