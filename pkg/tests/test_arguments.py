from itertools import product

import pytest

from causelaw import (
    Dag,
    delta_argument,
    find_sufficient_conditions,
    fit_cpts,
    joint_enumerate,
    query,
    ranked_arguments,
    render_argument,
)
from causelaw.arguments import NO_SUPPORT_TEXT
from causelaw.errors import ParameterError, ZeroEvidenceError


@pytest.fixture()
def dispute_net(cases):
    """Single-edge net: physical assault predicting property dispute."""
    return fit_cpts(cases, Dag(cases.catalog.ids, [("N11", "N15")]))


@pytest.fixture()
def rivalry_net(cases):
    """Three predictors of political rivalry."""
    dag = Dag(cases.catalog.ids, [("N8", "N10"), ("N2", "N10"), ("N4", "N10")])
    return fit_cpts(cases, dag, parent_orders={"N10": ("N8", "N2", "N4")})


def model_marginal(net, target, value):
    """Oracle: marginal by full enumeration over the network's nodes."""
    total = 0.0
    for values in product((0, 1), repeat=len(net.nodes)):
        assignment = dict(zip(net.nodes, values))
        if assignment[target] == value:
            total += joint_enumerate(net, assignment)
    return total


class TestDeltaArgument:
    def test_assault_raises_dispute_probability_seven_points(self, dispute_net):
        report = delta_argument(
            dispute_net, ("N15", 1), {"N11": 1}, baseline={"N11": 0}
        )
        assert report.p_with == pytest.approx(5 / 70, abs=1e-12)
        assert report.p_baseline == 0.0
        assert round(report.delta, 2) == 0.07
        assert report.supporting_total == 70
        assert not report.sufficient

    def test_equal_evidence_gives_zero_delta(self, dispute_net):
        report = delta_argument(dispute_net, ("N15", 0), {"N11": 1}, {"N11": 1})
        assert report.delta == 0.0

    def test_full_parent_evidence_on_rivalry_net(self, rivalry_net):
        report = delta_argument(
            rivalry_net, ("N10", 1), {"N8": 1, "N4": 1, "N2": 0}
        )
        assert report.p_with == 1.0
        assert report.sufficient
        assert report.supporting_total == 1
        expected_baseline = model_marginal(rivalry_net, "N10", 1)
        assert report.p_baseline == pytest.approx(expected_baseline, abs=1e-9)
        assert report.delta == pytest.approx(1.0 - expected_baseline, abs=1e-9)

    def test_delta_is_difference_to_machine_precision(self, dispute_net):
        report = delta_argument(dispute_net, ("N15", 1), {"N11": 1})
        assert report.delta == report.p_with - report.p_baseline

    def test_zero_evidence_propagates(self, cases):
        dag = Dag(cases.catalog.ids, [("N11", "N15")])
        net = fit_cpts(cases, dag)
        # No case combines a missing assault report with a property dispute.
        with pytest.raises(ZeroEvidenceError):
            delta_argument(net, ("N1", 1), {"N11": 0, "N15": 1})

    def test_target_inside_evidence_rejected(self, dispute_net):
        with pytest.raises(ParameterError):
            delta_argument(dispute_net, ("N15", 1), {"N15": 0})


class TestSufficientConditions:
    def test_absent_assault_is_the_only_certificate(self, dispute_net):
        found = find_sufficient_conditions(dispute_net, ("N15", 0), 2)
        assert found == [({"N11": 0}, 80)]

    def test_rivalry_certificate_ignores_irrelevant_parent(self, rivalry_net):
        """Both values of N2 lead to certainty, so {N8=1, N4=1} is minimal."""
        found = find_sufficient_conditions(rivalry_net, ("N10", 1), 3)
        assert ({"N8": 1, "N4": 1}, 2) in found
        for evidence, _ in found:
            assert not (
                {"N8": 1, "N4": 1}.items() < evidence.items()
            ), "supersets of a reported condition must not be reported"

    def test_certain_marginal_returns_empty_evidence(self, cases):
        net = fit_cpts(cases, Dag(cases.catalog.ids, []))
        # Manufacture certainty: a concept that is never reported.
        import numpy as np
        from causelaw import BinaryDataMatrix, ConceptCatalog

        cat = ConceptCatalog.from_ids(["A", "B"])
        m = BinaryDataMatrix(cat, ["c1", "c2"], np.array([[0, 1], [0, 0]]))
        net = fit_cpts(m, Dag(("A", "B"), []))
        found = find_sufficient_conditions(net, ("A", 0), 1)
        assert found == [({}, 2)]

    def test_reported_conditions_verify_as_certain(self, rivalry_net):
        for evidence, support in find_sufficient_conditions(rivalry_net, ("N10", 1), 3):
            assert query(rivalry_net, evidence, "N10")[1] == 1.0
            assert support >= 1

    def test_minimality_under_item_removal(self, rivalry_net):
        for evidence, _ in find_sufficient_conditions(rivalry_net, ("N10", 1), 3):
            for drop in evidence:
                rest = {k: v for k, v in evidence.items() if k != drop}
                p = query(rivalry_net, rest, "N10")[1]
                assert p != 1.0

    def test_bound_validation(self, dispute_net):
        with pytest.raises(ParameterError):
            find_sufficient_conditions(dispute_net, ("N15", 0), 0)
        with pytest.raises(ParameterError):
            find_sufficient_conditions(dispute_net, ("N15", 0), 17)


class TestRendering:
    def test_certainty_narrative(self, dispute_net, catalog):
        report = delta_argument(dispute_net, ("N15", 0), {"N11": 0})
        text = render_argument(report, catalog, n_cases=150)
        assert text == (
            "If it is established that physical assault is not reported, "
            "the probability that property dispute is not reported is 1.00 "
            "(baseline 0.97, change +3%), supported by 80 of 150 prior cases. "
            "This evidence predicts the outcome in every supporting case."
        )

    def test_seven_percent_delta_renders_signed(self, dispute_net, catalog):
        report = delta_argument(
            dispute_net, ("N15", 1), {"N11": 1}, baseline={"N11": 0}
        )
        assert "change +7%" in render_argument(report, catalog, n_cases=150)

    def test_no_support_marker_text(self):
        assert NO_SUPPORT_TEXT == (
            "No prior case matches this evidence; no probability is asserted."
        )

    def test_rendering_is_deterministic(self, dispute_net, catalog):
        report = delta_argument(dispute_net, ("N15", 0), {"N11": 0})
        a = render_argument(report, catalog, n_cases=150)
        b = render_argument(report, catalog, n_cases=150)
        assert a == b

    def test_narratives_never_say_causes(self, rivalry_net, catalog):
        for report in ranked_arguments(rivalry_net, ("N10", 1), 3, catalog):
            assert "causes" not in report.narrative


class TestRanking:
    def test_sufficient_conditions_come_first(self, dispute_net, catalog):
        reports = ranked_arguments(dispute_net, ("N15", 0), 2, catalog)
        assert reports[0].sufficient
        assert reports[0].evidence == {"N11": 0}
        rest = reports[1:]
        deltas = [abs(r.delta) for r in rest]
        assert deltas == sorted(deltas, reverse=True)

    def test_narratives_attached(self, dispute_net, catalog):
        reports = ranked_arguments(dispute_net, ("N15", 0), 2, catalog)
        assert all(r.narrative for r in reports)
