"""Domain type validation and canonicalization rules."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import enseval as ev
from enseval.core import normalize_row

CAT = ev.default_catalog()


class TestClassCatalog:
    def test_default_catalog_order(self):
        assert CAT.names == ("Mild_Demented", "Moderate_Demented",
                             "Non_Demented", "Very_Mild_Demented")
        assert CAT.k == 4

    def test_index_of(self):
        assert CAT.index_of("Non_Demented") == 2
        with pytest.raises(ev.UnknownClassName):
            CAT.index_of("Dementia")

    def test_needs_two_classes(self):
        with pytest.raises(ValueError):
            ev.ClassCatalog(("only",))

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(ValueError):
            ev.ClassCatalog(("a", "a"))
        with pytest.raises(ValueError):
            ev.ClassCatalog(("a", ""))


class TestProbabilityMatrix:
    def test_exact_simplex_points_accepted(self):
        m = ev.ProbabilityMatrix.from_rows(
            ["s1", "s2"],
            [[1, 0, 0, 0], [0.25, 0.25, 0.25, 0.25]], CAT)
        assert m.n == 2
        assert m.rows[0, 0] == 1.0
        assert m.rows[1, 3] == 0.25

    def test_row_within_tolerance_renormalized(self):
        m = ev.ProbabilityMatrix.from_rows(
            ["s1"], [[0.2500001, 0.25, 0.25, 0.2500003]], CAT)
        assert math.fsum(m.rows[0]) == 1.0

    def test_row_sum_off_beyond_tolerance(self):
        with pytest.raises(ev.RowSumViolation) as err:
            ev.ProbabilityMatrix.from_rows(["s1"], [[0.5, 0.5, 0.1, 0]], CAT)
        assert "s1" in str(err.value)

    def test_negative_probability_rejected(self):
        with pytest.raises(ev.DomainViolation):
            ev.ProbabilityMatrix.from_rows(["s1"],
                                           [[0.5, 0.5, 0.5, -0.5]], CAT)

    def test_tiny_negative_clamped(self):
        m = ev.ProbabilityMatrix.from_rows(
            ["s1"], [[-1e-10, 0.5, 0.25, 0.25 + 1e-10]], CAT)
        assert m.rows[0, 0] == 0.0
        assert math.fsum(m.rows[0]) == 1.0

    def test_non_finite_rejected(self):
        with pytest.raises(ev.DomainViolation):
            ev.ProbabilityMatrix.from_rows(["s1"],
                                           [[float("nan"), 0.5, 0.25, 0.25]],
                                           CAT)

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ev.DuplicateId):
            ev.ProbabilityMatrix.from_rows(
                ["s1", "s1"], [[1, 0, 0, 0], [1, 0, 0, 0]], CAT)

    def test_shape_must_match_catalog(self):
        with pytest.raises(ev.DomainViolation):
            ev.ProbabilityMatrix.from_rows(["s1"], [[0.5, 0.5]], CAT)

    def test_rows_are_write_protected(self):
        m = ev.ProbabilityMatrix.from_rows(["s1"], [[1, 0, 0, 0]], CAT)
        with pytest.raises(ValueError):
            m.rows[0, 0] = 0.5

    def test_equality_is_by_value(self):
        a = ev.ProbabilityMatrix.from_rows(["s1"], [[1, 0, 0, 0]], CAT)
        b = ev.ProbabilityMatrix.from_rows(["s1"], [[1, 0, 0, 0]], CAT)
        c = ev.ProbabilityMatrix.from_rows(["s1"], [[0, 1, 0, 0]], CAT)
        assert a == b
        assert a != c

    @given(st.lists(st.lists(st.floats(min_value=1e-6, max_value=1.0),
                             min_size=4, max_size=4),
                    min_size=1, max_size=8))
    def test_canonical_rows_sum_exactly_one(self, raw):
        """Any positive row, pre-scaled near the simplex, canonicalizes to
        an exact fsum of 1.0 with entries inside [0, 1]."""
        scaled = [[v / math.fsum(row) for v in row] for row in raw]
        ids = [f"s{i}" for i in range(len(scaled))]
        m = ev.ProbabilityMatrix.from_rows(ids, scaled, CAT)
        for row in m.rows:
            assert math.fsum(row) == 1.0
            assert np.all(row >= 0.0) and np.all(row <= 1.0)

    @given(st.lists(st.floats(min_value=1e-6, max_value=1.0),
                    min_size=4, max_size=4))
    @settings(max_examples=200)
    def test_normalize_row_is_idempotent(self, raw):
        """Canonical rows pass through normalize_row bit-identically."""
        row = np.array([v / math.fsum(raw) for v in raw])
        once = normalize_row(row)
        twice = normalize_row(once)
        assert once.tobytes() == twice.tobytes()


class TestLabelVector:
    def test_from_pairs_checks_range(self):
        with pytest.raises(ev.UnknownClassName):
            ev.LabelVector.from_pairs(["s1"], [4], CAT)

    def test_length_mismatch(self):
        with pytest.raises(ev.DomainViolation):
            ev.LabelVector(ids=("s1", "s2"), labels=(0,))

    def test_duplicate_id(self):
        with pytest.raises(ev.DuplicateId):
            ev.LabelVector(ids=("s1", "s1"), labels=(0, 1))


class TestConfusionMatrix:
    def test_counts_and_helpers(self):
        cm = ev.ConfusionMatrix(
            counts=np.array([[83, 0, 2, 0], [0, 6, 1, 0],
                             [0, 0, 328, 1], [0, 0, 3, 216]]),
            catalog=CAT)
        assert cm.total == 640
        assert cm.trace == 633
        assert cm.row_sums() == (85, 7, 329, 219)
        assert cm.col_sums() == (83, 6, 334, 217)

    def test_rejects_floats(self):
        with pytest.raises(ev.DomainViolation):
            ev.ConfusionMatrix(counts=np.array([[1.0, 0.0], [0.0, 1.0]]),
                               catalog=ev.ClassCatalog(("a", "b")))

    def test_rejects_negative(self):
        with pytest.raises(ev.DomainViolation):
            ev.ConfusionMatrix(counts=np.array([[1, -1], [0, 1]]),
                               catalog=ev.ClassCatalog(("a", "b")))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ev.DomainViolation):
            ev.ConfusionMatrix(counts=np.zeros((3, 4), dtype=int),
                               catalog=CAT)

    def test_equality(self):
        cat2 = ev.ClassCatalog(("a", "b"))
        a = ev.ConfusionMatrix(counts=np.array([[1, 0], [0, 1]]),
                               catalog=cat2)
        b = ev.ConfusionMatrix(counts=np.array([[1, 0], [0, 1]]),
                               catalog=cat2)
        c = ev.ConfusionMatrix(counts=np.array([[0, 1], [1, 0]]),
                               catalog=cat2)
        assert a == b
        assert a != c


class TestEnsembleSpec:
    def test_display_name_sorts_members(self):
        spec = ev.EnsembleSpec(frozenset({"res50", "effnet", "incep"}))
        assert spec.display_name == "effnet+incep+res50"
        assert spec.sorted_members == ("effnet", "incep", "res50")
        assert spec.size == 3

    def test_numeric_suffix_ordering(self):
        # '1' sorts before '5', so res101 and res152 precede res50.
        spec = ev.EnsembleSpec(frozenset({"res50", "res101", "res152"}))
        assert spec.display_name == "res101+res152+res50"

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ev.EnsembleSpec(frozenset())


class TestMetricsReport:
    def test_values_follow_metric_name_order(self):
        rep = ev.MetricsReport(
            weighted_accuracy=0.1, weighted_precision=0.2,
            macro_precision=0.3, micro_precision=0.4, weighted_recall=0.5,
            macro_recall=0.6, micro_recall=0.7, weighted_f1=0.8,
            macro_f1=0.9, micro_f1=1.0, f1_mode=ev.F1Mode.DEFINITION,
            per_class=())
        assert rep.values() == (0.1, 0.2, 0.3, 0.4, 0.5,
                                0.6, 0.7, 0.8, 0.9, 1.0)
        assert ev.METRIC_NAMES[0] == "weighted_accuracy"
        assert ev.METRIC_NAMES[-1] == "micro_f1"
