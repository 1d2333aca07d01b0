"""
Unit tests for the Fubini table and the norm conjecture search.
"""
import pytest

from src.services.conjecture_service import conjecture_search, fubini_table

pytestmark = pytest.mark.unit


class TestFubiniTable:
    """<(xd)^i, (xd)^(k-i)> against Fubini(k)."""

    def test_rows(self):
        """Rows up to k = 5 match and do not depend on i."""
        rows = fubini_table(5)
        assert [r.fubini for r in rows] == [1, 1, 3, 13, 75, 541]
        for row in rows:
            assert len(row.values) == row.k + 1
            assert row.independent_of_i
            assert row.matches

    def test_negative_k(self):
        """max_k must be non-negative."""
        with pytest.raises(ValueError):
            fubini_table(-1)


class TestConjectureSearch:
    """Reproducible random search."""

    def test_reproducible(self):
        """The same seed replays the same report."""
        first = conjecture_search(40, seed=1, max_exp=2, max_terms=2)
        second = conjecture_search(40, seed=1, max_exp=2, max_terms=2)
        assert first.to_dict() == second.to_dict()
        assert first.trials == 40
        assert first.seed == 1

    def test_default_seed_from_configuration(self):
        """Without a seed the configured default is used."""
        report = conjecture_search(3, max_exp=1, max_terms=1)
        assert report.seed == 20240601

    def test_counterexamples_are_genuine(self):
        """Every reported pair really violates the squared inequality."""
        report = conjecture_search(60, seed=7, max_exp=2, max_terms=3, n=1)
        for c in report.counterexamples:
            assert (c.norm2_XY - c.norm2_X * c.norm2_Y).sign() < 0
            assert c.n == 1
        assert report.found == bool(report.counterexamples)

    def test_trial_indices_in_range(self):
        """Reported trial numbers refer to trials that actually ran."""
        report = conjecture_search(30, seed=3, max_exp=1, max_terms=1, n=1)
        assert report.to_dict()["trials"] == 30
        assert all(c.trial < 30 for c in report.counterexamples)

    def test_invalid_arguments(self):
        """Negative trials or zero terms are rejected."""
        with pytest.raises(ValueError):
            conjecture_search(-1)
        with pytest.raises(ValueError):
            conjecture_search(5, max_terms=0)
