"""
Unit tests for the Weyl algebra core: composition, gradings, involution, action.
"""
from fractions import Fraction

import pytest

from src.cache import cache_manager, get_cache
from src.configg import ConfigurationManager
from src.models.polynomial import MultiPoly
from src.models.weyl import (
    WeylElement, WeylElementBuilder, WeylMonomial, apply, commutator, compose, compose_power,
    embed_factor, factor_monomial, generator_d, generator_x, monom_compose, relations_check,
)
from src.services import sampling
from src.utils.errors import ArityMismatchError

pytestmark = pytest.mark.unit

x = WeylElement.x(0, 1)
d = WeylElement.d(0, 1)
one = WeylElement.one(1)


def mono(alpha, beta, coeff=1):
    return WeylElement.monomial(alpha, beta, coeff)


class TestWeylMonomial:
    """Monomial invariants and gradings."""

    def test_weights(self):
        """x1^2 d2 has multi-weight (2,-1) and weight 1."""
        m = WeylMonomial((2, 0), (0, 1))
        assert m.multiweight() == (2, -1)
        assert m.weight() == 1

    def test_bar_swaps_exponents(self):
        """bar(x^a d^b) = x^b d^a."""
        m = WeylMonomial((1, 3), (2, 0))
        assert m.bar() == WeylMonomial((2, 0), (1, 3))
        assert m.bar().bar() == m

    def test_mismatched_lengths_rejected(self):
        """alpha and beta must have the same length."""
        with pytest.raises(ArityMismatchError):
            WeylMonomial((1,), (1, 0))


class TestComposition:
    """Normal-ordered composition law."""

    def test_d_after_x(self):
        """d o x = x d + 1."""
        assert compose(d, x) == mono((1,), (1,)) + 1

    def test_x_after_d(self):
        """x o d is already normal ordered."""
        assert compose(x, d) == mono((1,), (1,))

    def test_d2_x2(self):
        """d^2 o x^2 = x^2 d^2 + 4 x d + 2."""
        expected = mono((2,), (2,)) + mono((1,), (1,), 4) + 2
        assert monom_compose(WeylMonomial((0,), (2,)), WeylMonomial((2,), (0,))) == expected

    def test_commutation_relations(self):
        """[d_i, x_j] = delta_ij in A_1 .. A_3."""
        for n in (1, 2, 3):
            assert relations_check(n)

    def test_generators(self):
        """generator_x and generator_d use 0-based slots."""
        assert generator_x(1, 2) == mono((0, 1), (0, 0))
        assert generator_d(0, 2) == mono((0, 0), (1, 0))

    def test_associativity_random(self, rng):
        """(X o Y) o Z == X o (Y o Z) on random elements."""
        for _ in range(20):
            n = rng.randint(1, 2)
            X, Y, Z = (sampling.random_element(rng, n, 2, 3) for _ in range(3))
            assert compose(compose(X, Y), Z) == compose(X, compose(Y, Z))

    def test_unit(self, rng):
        """1 o X == X o 1 == X."""
        X = sampling.random_element(rng, 2, 3, 4)
        unit = WeylElement.one(2)
        assert compose(unit, X) == X
        assert compose(X, unit) == X

    def test_arity_mismatch(self):
        """Composing elements of different arity fails."""
        with pytest.raises(ArityMismatchError):
            compose(x, WeylElement.x(0, 2))

    def test_compose_power(self):
        """(x d)^2 = x^2 d^2 + x d; power zero is the unit."""
        xd = mono((1,), (1,))
        assert compose_power(xd, 2) == mono((2,), (2,)) + xd
        assert compose_power(xd, 0) == one
        assert xd ** 2 == compose_power(xd, 2)

    def test_matmul_operator(self):
        """'@' is composition; '*' only scales."""
        assert d @ x == compose(d, x)
        assert 3 * x == mono((1,), (0,), 3)

    def test_commutator(self):
        """[d, x^2] = 2 x."""
        assert commutator(d, mono((2,), (0,))) == mono((1,), (0,), 2)

    def test_bar_is_antiautomorphism(self, rng):
        """bar(X o Y) == bar(Y) o bar(X)."""
        for _ in range(20):
            X = sampling.random_element(rng, 2, 2, 3)
            Y = sampling.random_element(rng, 2, 2, 3)
            assert compose(X, Y).bar() == compose(Y.bar(), X.bar())

    def test_integral_closed_under_composition(self, rng):
        """The gamma coefficients are integers, so integral inputs compose to integral outputs."""
        for _ in range(30):
            n = rng.randint(1, 2)
            X = sampling.random_element(rng, n, 3, 4)
            Y = sampling.random_element(rng, n, 3, 4)
            assert X.is_integral() and Y.is_integral()
            assert compose(X, Y).is_integral()
        assert not mono((1,), (0,), Fraction(1, 2)).is_integral()
        assert compose(mono((1,), (0,), Fraction(1, 2)), mono((1,), (0,), 2)).is_integral()


class TestGradings:
    """Weight decomposition, projections and the self/skew split."""

    def test_is_homogeneous(self):
        """x d + 1 has weight 0; x + d is inhomogeneous; zero has no weight."""
        assert (mono((1,), (1,)) + 1).is_homogeneous() == 0
        assert (x + d).is_homogeneous() is None
        assert WeylElement.zero(1).is_homogeneous() is None

    def test_projections(self):
        """project_weight and project_multiweight keep the matching terms."""
        X = mono((1, 0), (0, 1)) + mono((1, 1), (0, 0)) + mono((0, 0), (1, 0), 5)
        assert X.project_weight(2) == mono((1, 1), (0, 0))
        assert X.project_weight(0) == mono((1, 0), (0, 1))
        assert X.project_multiweight((-1, 0)) == mono((0, 0), (1, 0), 5)
        assert X.project_weight(7).is_zero()

    def test_components_sum_back(self, rng):
        """The multi-weight components add up to the element."""
        X = sampling.random_element(rng, 2, 3, 6)
        total = WeylElement.zero(2)
        for part in X.multiweight_components().values():
            total = total + part
        assert total == X

    def test_self_and_skew(self, rng):
        """X = self + skew, self is bar-fixed, skew is bar-negated."""
        X = sampling.random_element(rng, 2, 3, 5)
        s, k = X.self_part(), X.skew_part()
        assert s + k == X
        assert s.bar() == s
        assert k.bar() == -k


class TestAction:
    """Action on polynomials and the composition oracle."""

    def test_euler_operator(self):
        """x d acts on x^3 as multiplication by 3."""
        t = MultiPoly.variable(0, 1)
        assert apply(mono((1,), (1,)), t ** 3) == 3 * t ** 3

    def test_derivative_two_variables(self):
        """d1^2 (x1^2 x2) = 2 x2."""
        p = MultiPoly.monomial((2, 1))
        assert apply(mono((0, 0), (2, 0)), p) == MultiPoly.monomial((0, 1), 2)

    def test_action_of_composition(self, rng):
        """(X o Y) f == X (Y f)."""
        for _ in range(15):
            n = rng.randint(1, 2)
            X = sampling.random_element(rng, n, 3, 3)
            Y = sampling.random_element(rng, n, 3, 3)
            f = sampling.random_poly(rng, n)
            assert apply(compose(X, Y), f) == apply(X, apply(Y, f))


class TestFactorization:
    """Slot factors and the tensor embedding."""

    def test_factor_and_embed(self):
        """Composing the embedded factors rebuilds the monomial."""
        m = WeylMonomial((2, 1, 0), (0, 3, 1))
        factors = factor_monomial(m)
        assert [slot for slot, _ in factors] == [0, 1, 2]
        rebuilt = WeylElement.one(3)
        for slot, factor in factors:
            rebuilt = compose(rebuilt, embed_factor(slot, factor, 3))
        assert rebuilt == WeylElement.from_monomial(m)

    def test_embed_rejects_bad_slot(self):
        """Slots outside 0..n-1 fail."""
        with pytest.raises(ValueError):
            embed_factor(2, WeylMonomial((1,), (0,)), 2)


class TestTextAndBuilder:
    """Canonical text, dictionary form and the fluent builder."""

    def test_canonical_text(self):
        """Terms sorted by weight, then alpha, then beta."""
        X = WeylElement(2, {
            WeylMonomial((2, 0), (0, 1)): Fraction(1, 2),
            WeylMonomial((0, 0), (1, 0)): -1,
            WeylMonomial((0, 0), (0, 0)): 3,
        })
        assert X.to_text() == "-d1 + 3 + 1/2*x1^2*d2"
        assert WeylElement.zero(3).to_text() == "0"
        assert (mono((1,), (1,)) + 1).to_text() == "1 + x*d"

    def test_dict_roundtrip(self, rng):
        """to_dict / from_dict is lossless."""
        X = sampling.random_element(rng, 2, 3, 4).scale(Fraction(2, 7))
        assert WeylElement.from_dict(X.to_dict()) == X

    def test_builder(self):
        """Terms accumulate and build() resets the builder."""
        builder = WeylElementBuilder(1)
        X = builder.term((1,), (1,)).term((1,), (1,), 2).constant(-1).build()
        assert X == mono((1,), (1,), 3) - 1
        assert builder.build().is_zero()


class TestMemoization:
    """Composition memo tables."""

    def test_repeated_composition_hits_cache(self, fresh_cache):
        """The second identical composition is served from the table."""
        compose(d, x)
        compose(d, x)
        info = get_cache("monom_compose").info()
        assert info["hits"] >= 1
        assert info["total_keys"] >= 1

    def test_disabled_memo_gives_same_results(self, monkeypatch, fresh_cache):
        """With WEYL_MEMO_ENABLED=false every composition is recomputed."""
        monkeypatch.setenv("WEYL_MEMO_ENABLED", "false")
        ConfigurationManager.reload()
        cache_manager.reset()
        assert compose(d, x) == mono((1,), (1,)) + 1
        assert get_cache("monom_compose").info()["status"] == "disabled"
