"""Tests for the verify-suite check builders."""

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.pipeline.runner import (
    bridge_checks,
    bridge_index,
    counting_checks,
    sublattice_order_checks,
)
from src.drinfeld_modpoly.types.reports import CheckStatus


class TestChecks:
    def test_sublattice_orders_compare_fractions(self, A2):
        results = sublattice_order_checks(A2.T, 2)
        assert len(results) == 3
        assert all(r.status == CheckStatus.PASSED for r in results)
        details = sorted(r.detail for r in results)
        assert details == [
            "order -1/3, expected -1/3",
            "order -1/3, expected -1/3",
            "order -4/3, expected -4/3",
        ]

    def test_sublattice_orders_skipped_above_cap(self, A2):
        results = sublattice_order_checks(A2.T**3, 2)
        assert [r.status for r in results] == [CheckStatus.REPORTED]

    def test_counting_covers_degree_three_on_small_fields(self):
        names = [r.name for r in counting_checks(field_for_q(2), 2)]
        assert "count n=T^3 r=2" in names
        assert len(names) == 2 + 4 + 8

    def test_bridge_index(self):
        assert bridge_index(2) == 4
        assert bridge_index(3) == 4
        assert bridge_index(4) == 3

    def test_bridge_check_passes(self):
        [result] = bridge_checks(field_for_q(2), 3)
        assert result.status == CheckStatus.PASSED
        assert result.detail == "k <= 3, mismatches: none"
