"""
Unit tests for the identity verifiers and the suite building blocks.
"""
import pytest

from src.models.polynomial import MultiPoly
from src.models.weyl import WeylElement, WeylMonomial
from src.services import forms_service as forms
from src.services import identities_service as ids
from src.services import sampling
from src.services.combinatorics import build_M1
from src.utils.errors import ArityMismatchError

pytestmark = pytest.mark.unit


class TestCombinatorialIdentities:
    """Plain boolean verifiers on small ranges."""

    def test_lemma1(self):
        """(1+(1+x)(y+z+yz))^n expands as the triple binomial sum."""
        for n in range(5):
            assert ids.lemma1_check(n)

    def test_lemma1_sides_degree(self):
        """Both sides have total degree 3n."""
        lhs, rhs = ids.lemma1_sides(2)
        assert lhs.degree() == rhs.degree() == 6

    def test_corollary2(self):
        """Symmetry in a and b after the 2^a, 2^b weights."""
        for n in range(6):
            for a in range(n + 1):
                for b in range(n + 1):
                    assert ids.corollary2_check(n, a, b)

    def test_lemma3(self):
        """Multi-index identity, arity 1 and 2, entries <= 2."""
        for alpha in [(0,), (1,), (2,)]:
            for beta in [(0,), (2,)]:
                for theta in [(1,), (3,)]:
                    assert ids.lemma3_check(alpha, beta, theta)
        assert ids.lemma3_check((1, 2), (2, 0), (2, 2))

    def test_lemma3_arity(self):
        """Mismatched lengths are rejected."""
        with pytest.raises(ArityMismatchError):
            ids.lemma3_sides((1,), (1, 0), (1,))

    def test_lemma100_and_101(self):
        """Polynomial identity in t and d = d-tilde."""
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    assert ids.lemma100_check(a, b, c)
                    assert ids.lemma101_check(a, b, c)


class TestDeterminantIdentities:
    """Determinant formulas for the Gram families."""

    def test_lemma98(self):
        """det M^(a)(t) = t^C(k+1,2) and the left triangular factorization."""
        for a in range(3):
            for k in range(4):
                assert ids.lemma98_det_check(a, k)
                assert ids.lemma98_triangular_check(a, k)

    def test_right_multiplication_is_not_triangular(self):
        """M . M1 keeps a non-zero entry below the diagonal."""
        product = forms.build_M(1, 1) @ build_M1(1)
        t = MultiPoly.variable(0, 1)
        assert product[1, 0] == -1 - t

    def test_lemma102(self):
        """det M~^(a,k) = x^(a(k+1)) (xy+z)^C(k+1,2) and the substitution form."""
        for a in range(3):
            for k in range(3):
                assert ids.lemma102_det_check(a, k)
                assert ids.lemma102_substitution_check(a, k)

    def test_lemma103(self):
        """Closed form of det N and the eta rewriting."""
        for a in range(3):
            for k in range(4):
                assert ids.lemma103_det_check(a, k)
                assert ids.lemma103_rewrite_check(a, k)

    def test_lemma104(self):
        """Quadratic form identity, including the all-zero vector."""
        assert ids.lemma104_check(2, [1, -3, 2])
        assert ids.lemma104_check(0, [0, 0, 0])

    def test_triangular_binomial(self):
        """C(k+1, 2)."""
        assert [ids.triangular_binomial(k) for k in range(5)] == [0, 1, 3, 6, 10]


class TestFormIdentities:
    """Verifiers of the Frobenius and Euclid theorems."""

    def test_lemma4_lemma21(self):
        """Closed form and weight vanishing on all pairs in A_1 with exponents <= 2."""
        pool = sampling.all_monomials(1, 2)
        for m1 in pool:
            for m2 in pool:
                assert ids.lemma4_check(m1, m2)
                assert ids.lemma21_check(m1, m2)

    def test_lemma20(self, rng):
        """Trace is bar-invariant on random elements."""
        for _ in range(20):
            assert ids.lemma20_check(sampling.random_element(rng, 2, 3, 4))

    def test_composition_oracle(self, rng):
        """(X o Y) f = X (Y f)."""
        X = sampling.random_element(rng, 2, 2, 3)
        Y = sampling.random_element(rng, 2, 2, 3)
        assert ids.composition_oracle_check(X, Y, sampling.random_poly(rng, 2))

    def test_decomposable_and_embedding(self, rng):
        """Product formula and tensor embedding on random monomials of A_2."""
        for _ in range(20):
            m1 = sampling.random_monomial(rng, 2, 3)
            m2 = WeylMonomial(m1.alpha, m1.beta)
            assert ids.decomposable_product_check(m1, m2)
            assert ids.embedding_check(m1)


class TestCheckOptions:
    """Range overrides."""

    def test_negative_rejected(self):
        """Every range must be non-negative."""
        with pytest.raises(ValueError):
            ids.CheckOptions(max_n=-1)

    def test_arity_positive(self):
        """n = 0 is not an algebra."""
        with pytest.raises(ValueError):
            ids.CheckOptions(n=0)

    def test_pick_default(self):
        """None falls back to the default."""
        options = ids.CheckOptions(max_k=2)
        assert options.pick("max_k", 7) == 2
        assert options.pick("max_a", 7) == 7

    def test_rng_is_deterministic(self):
        """Same seed and key give the same stream; keys are independent."""
        options = ids.CheckOptions(seed=5)
        first = [options.rng("euclid").random() for _ in range(1)]
        second = [options.rng("euclid").random() for _ in range(1)]
        other = [options.rng("gram").random() for _ in range(1)]
        assert first == second
        assert first != other


class _FailingCheck(ids.IdentityCheck):
    key = "failing"
    description = "fails at the second case"

    def iter_cases(self, options):
        yield {"i": 0}, True
        yield {"i": 1}, False
        yield {"i": 2}, False


class TestIdentityCheck:
    """Strategy base class, factory and key resolution."""

    def test_stops_at_first_failure(self):
        """The result keeps the first counterexample and the number of cases seen."""
        result = _FailingCheck().run(ids.CheckOptions())
        assert not result.passed
        assert result.cases == 2
        assert result.counterexample == {"i": 1}
        assert result.to_dict()["lemma"] == "failing"

    def test_run_check_passes(self):
        """Lemma 1 up to n = 3 has four cases."""
        result = ids.run_check("1", ids.CheckOptions(max_n=3))
        assert result.passed
        assert result.cases == 4
        assert result.counterexample is None

    def test_factory_keys(self):
        """Registry order starts with the combinatorial lemmas."""
        keys = ids.IdentityCheckFactory.keys()
        assert keys[:3] == ["1", "2", "3"]
        for key in ("98", "103", "104", "relations", "frobenius", "euclid", "gram", "fubini"):
            assert key in keys
        assert isinstance(ids.IdentityCheckFactory.create("98"), ids.Lemma98Check)

    def test_unknown_key(self):
        """Unknown keys raise ValueError naming the choices."""
        with pytest.raises(ValueError):
            ids.IdentityCheckFactory.create("99")

    def test_resolve_keys(self):
        """'all' expands; order follows the registry and duplicates collapse."""
        assert ids.resolve_keys(["all"]) == ids.IdentityCheckFactory.keys()
        assert ids.resolve_keys(["101", "1", "101"]) == ["1", "101"]

    def test_suite_report(self):
        """A report passes only when every result passes."""
        ok = ids.CheckResult("1", True, 3)
        bad = ids.CheckResult("2", False, 1, counterexample={"n": 0})
        report = ids.SuiteReport([ok, bad])
        assert not report.passed
        assert report.first_failure() is bad
        assert report.to_dict()["results"][1]["counterexample"] == {"n": 0}
        assert ids.SuiteReport([ok]).passed

    def test_element_text_helper(self):
        """Counterexamples carry canonical text."""
        assert ids._text(WeylElement.x(0, 1)) == "x"
