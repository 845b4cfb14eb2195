from itertools import product

import numpy as np
import pytest

from causelaw import (
    BayesNet,
    BinaryDataMatrix,
    ConceptCatalog,
    Cpt,
    CptRow,
    Dag,
    fit_cpts,
    joint_enumerate,
    query,
)
from causelaw.bayesnet import (
    document_to_net,
    evidence_support,
    net_to_document,
    read_net,
    refit_node,
    write_net,
)
from causelaw.errors import ParameterError, StructureError, ZeroEvidenceError


def random_net(rng, n_nodes, edge_prob=0.4):
    names = [f"V{i}" for i in range(n_nodes)]
    edges = [
        (names[i], names[j])
        for i in range(n_nodes)
        for j in range(i + 1, n_nodes)
        if rng.random() < edge_prob
    ]
    dag = Dag(names, edges)
    cpts = {}
    for v in names:
        parents = dag.parents(v)
        rows = []
        for combo in product((0, 1), repeat=len(parents)):
            p1 = float(rng.uniform(0.05, 0.95))
            rows.append(CptRow(combo, (1 - p1, p1), (0, 0), 0))
        cpts[v] = Cpt(v, parents, tuple(rows))
    return BayesNet(dag, cpts)


def enumeration_posterior(net, evidence, target):
    """Oracle: posterior as a ratio of summed full-joint probabilities."""
    free = [n for n in net.nodes if n not in evidence]
    mass = [0.0, 0.0]
    for values in product((0, 1), repeat=len(free)):
        assignment = dict(evidence)
        assignment.update(zip(free, values))
        mass[assignment[target]] += joint_enumerate(net, assignment)
    total = mass[0] + mass[1]
    if total == 0:
        return None
    return (mass[0] / total, mass[1] / total)


class TestFitCpts:
    def test_three_parent_rows_match_reference_counts(self, cases):
        dag = Dag(
            cases.catalog.ids,
            [("N8", "N10"), ("N2", "N10"), ("N4", "N10")],
        )
        net = fit_cpts(cases, dag, parent_orders={"N10": ("N8", "N2", "N4")})
        cpt = net.cpts["N10"]
        assert cpt.parents == ("N8", "N2", "N4")
        expected = {
            (0, 0, 0): ((1.0, 0.0), (125, 0), 125),
            (0, 0, 1): ((1.0, 0.0), (9, 0), 9),
            (0, 1, 0): ((1.0, 0.0), (1, 0), 1),
            (0, 1, 1): ((1.0, 0.0), (1, 0), 1),
            (1, 0, 0): ((1.0, 0.0), (12, 0), 12),
            (1, 0, 1): ((0.0, 1.0), (0, 1), 1),
            (1, 1, 0): ((0.5, 0.5), (0, 0), 0),
            (1, 1, 1): ((0.0, 1.0), (0, 1), 1),
        }
        for row in cpt.rows:
            p, n, total = expected[row.combo]
            assert row.p == p
            assert row.n == n
            assert row.total == total
        assert cpt.rows[6].is_fallback

    def test_single_parent_rows_keep_exact_rationals(self, cases):
        dag = Dag(cases.catalog.ids, [("N11", "N15")])
        net = fit_cpts(cases, dag)
        cpt = net.cpts["N15"]
        row0 = cpt.row_for((0,))
        row1 = cpt.row_for((1,))
        assert row0.p == (1.0, 0.0)
        assert row0.n == (80, 0)
        assert row1.p == (65 / 70, 5 / 70)
        assert row1.n == (65, 5)
        assert (round(row1.p[0], 2), round(row1.p[1], 2)) == (0.93, 0.07)

    def test_parentless_all_ones_column(self):
        cat = ConceptCatalog.from_ids(["X"])
        m = BinaryDataMatrix(cat, ["a", "b", "c"], np.ones((3, 1)))
        net = fit_cpts(m, Dag(("X",), []))
        assert net.cpts["X"].rows[0].p == (0.0, 1.0)

    def test_counts_reproduce_probabilities_exactly(self, cases):
        dag = Dag(cases.catalog.ids, [("N1", "N3"), ("N5", "N3")])
        net = fit_cpts(cases, dag)
        for row in net.cpts["N3"].rows:
            if row.total > 0:
                assert row.p == (row.n[0] / row.total, row.n[1] / row.total)
            else:
                assert row.p == (0.5, 0.5)

    def test_refit_after_edge_removal_only_changes_child(self, cases):
        dag = Dag(cases.catalog.ids, [("N11", "N15"), ("N1", "N3")])
        net = fit_cpts(cases, dag)
        smaller = fit_cpts(cases, dag.with_edges(remove=[("N11", "N15")]))
        for node in dag.nodes:
            if node == "N15":
                assert smaller.cpts[node] != net.cpts[node]
            else:
                assert smaller.cpts[node] == net.cpts[node]

    def test_mismatched_parent_order_rejected(self, cases):
        dag = Dag(cases.catalog.ids, [("N11", "N15")])
        with pytest.raises(ParameterError):
            fit_cpts(cases, dag, parent_orders={"N15": ("N1",)})


class TestJointEnumerate:
    def test_single_root(self):
        dag = Dag(("X",), [])
        net = BayesNet(dag, {"X": Cpt("X", (), (CptRow((), (0.3, 0.7), (0, 0), 0),))})
        assert joint_enumerate(net, {"X": 1}) == pytest.approx(0.7)

    def test_two_node_chain(self):
        dag = Dag(("A", "B"), [("A", "B")])
        cpts = {
            "A": Cpt("A", (), (CptRow((), (0.5, 0.5), (0, 0), 0),)),
            "B": Cpt(
                "B",
                ("A",),
                (
                    CptRow((0,), (0.8, 0.2), (0, 0), 0),
                    CptRow((1,), (0.2, 0.8), (0, 0), 0),
                ),
            ),
        }
        net = BayesNet(dag, cpts)
        assert joint_enumerate(net, {"A": 1, "B": 1}) == pytest.approx(0.4)

    def test_joint_sums_to_one(self):
        rng = np.random.default_rng(17)
        for _ in range(5):
            net = random_net(rng, 6)
            total = sum(
                joint_enumerate(net, dict(zip(net.nodes, values)))
                for values in product((0, 1), repeat=6)
            )
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_partial_assignment_rejected(self):
        rng = np.random.default_rng(18)
        net = random_net(rng, 3)
        with pytest.raises(ParameterError):
            joint_enumerate(net, {"V0": 1})


class TestQuery:
    def test_matches_enumeration_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            n_nodes = int(rng.integers(3, 13))
            net = random_net(rng, n_nodes)
            others = list(net.nodes)
            target = others.pop(int(rng.integers(0, n_nodes)))
            k = int(rng.integers(0, len(others) + 1))
            evidence = {
                v: int(rng.integers(0, 2))
                for v in rng.choice(others, size=k, replace=False)
            }
            got = query(net, evidence, target)
            want = enumeration_posterior(net, evidence, target)
            assert got[0] == pytest.approx(want[0], abs=1e-9)
            assert got[1] == pytest.approx(want[1], abs=1e-9)

    def test_marginal_of_root(self):
        dag = Dag(("X",), [])
        net = BayesNet(dag, {"X": Cpt("X", (), (CptRow((), (0.3, 0.7), (0, 0), 0),))})
        assert query(net, {}, "X") == pytest.approx((0.3, 0.7))

    def test_fitted_single_parent_net(self, cases):
        net = fit_cpts(cases, Dag(cases.catalog.ids, [("N11", "N15")]))
        posterior = query(net, {"N11": 0}, "N15")
        assert posterior[0] == 1.0
        assert posterior[1] == 0.0

    def test_empty_evidence_integrates_to_one(self):
        rng = np.random.default_rng(29)
        net = random_net(rng, 7)
        for target in net.nodes:
            p = query(net, {}, target)
            assert p[0] + p[1] == pytest.approx(1.0, abs=1e-12)

    def test_zero_probability_evidence_raises(self):
        dag = Dag(("X", "Y"), [("X", "Y")])
        cpts = {
            "X": Cpt("X", (), (CptRow((), (1.0, 0.0), (10, 0), 10),)),
            "Y": Cpt(
                "Y",
                ("X",),
                (
                    CptRow((0,), (0.5, 0.5), (5, 5), 10),
                    CptRow((1,), (0.5, 0.5), (0, 0), 0),
                ),
            ),
        }
        net = BayesNet(dag, cpts)
        with pytest.raises(ZeroEvidenceError):
            query(net, {"X": 1}, "Y")

    def test_target_in_evidence_rejected(self):
        rng = np.random.default_rng(31)
        net = random_net(rng, 3)
        with pytest.raises(ParameterError):
            query(net, {"V0": 1}, "V0")


class TestSupportCounts:
    def test_parent_evidence_selects_rows(self, cases):
        net = fit_cpts(cases, Dag(cases.catalog.ids, [("N11", "N15")]))
        assert evidence_support(net, "N15", {"N11": 0}) == 80
        assert evidence_support(net, "N15", {"N11": 1}) == 70
        assert evidence_support(net, "N15", {}) == 150

    def test_non_parent_evidence_does_not_restrict(self, cases):
        net = fit_cpts(cases, Dag(cases.catalog.ids, [("N11", "N15")]))
        assert evidence_support(net, "N15", {"N1": 1}) == 150


class TestSerialization:
    def test_round_trip(self, cases, tmp_path):
        dag = Dag(
            cases.catalog.ids,
            [("N8", "N10"), ("N2", "N10"), ("N4", "N10"), ("N11", "N15")],
        )
        net = fit_cpts(cases, dag, source={"dataset": "cases.csv"})
        path = tmp_path / "net.json"
        write_net(net, path)
        again = read_net(path)
        assert again.dag == net.dag
        for node in net.nodes:
            assert again.cpts[node] == net.cpts[node]
        assert again.source == net.source

    def test_counts_always_serialized(self, cases):
        net = fit_cpts(cases, Dag(cases.catalog.ids, [("N11", "N15")]))
        doc = net_to_document(net)
        for entry in doc["cpts"]:
            for row in entry["rows"]:
                assert "n" in row
        assert document_to_net(doc).cpts["N15"].row_for((0,)).n == (80, 0)

    def test_invalid_cpts_rejected(self):
        dag = Dag(("A", "B"), [("A", "B")])
        cpt_a = Cpt("A", (), (CptRow((), (0.5, 0.5), (0, 0), 0),))
        with pytest.raises(StructureError):
            BayesNet(dag, {"A": cpt_a})


class TestRefitNode:
    def test_shares_untouched_tables(self, cases):
        dag = Dag(cases.catalog.ids, [("N11", "N15")])
        net = fit_cpts(cases, dag)
        refit = refit_node(net, cases, "N15")
        assert refit.cpts["N15"] == net.cpts["N15"]
        assert refit.cpts["N1"] is net.cpts["N1"]
