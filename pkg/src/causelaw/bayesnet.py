"""Conditional probability tables and exact inference over binary networks.

Probabilities are maximum-likelihood fractions kept at full precision, with
the observed case counts carried alongside every row so that each reported
number can cite its supporting cases. Parent combinations never observed in
the data fall back to the uniform (0.5, 0.5) row with zero counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .dataset import contingency
from .errors import ParameterError, StructureError, ZeroEvidenceError
from .graphs import Dag, document_to_graph, graph_to_document


@dataclass(frozen=True)
class CptRow:
    combo: tuple
    p: tuple
    n: tuple
    total: int

    @property
    def is_fallback(self):
        return self.total == 0


@dataclass(frozen=True)
class Cpt:
    """Distribution of one node per combination of its parents' values.

    Rows are enumerated in binary counting order over the parents, first
    parent most significant.
    """

    node: str
    parents: tuple
    rows: tuple

    def row_for(self, combo):
        idx = 0
        for bit in combo:
            idx = (idx << 1) | int(bit)
        return self.rows[idx]


class BayesNet:
    """A DAG with one fitted CPT per node; immutable once built."""

    def __init__(self, dag, cpts, source=None):
        if set(cpts) != set(dag.nodes):
            raise StructureError("CPTs must cover exactly the DAG's nodes")
        for node, cpt in cpts.items():
            if tuple(sorted(cpt.parents)) != tuple(sorted(dag.parents(node))):
                raise StructureError(f"CPT parents for {node!r} do not match the DAG")
        self.dag = dag
        self.cpts = dict(cpts)
        self.source = dict(source or {})

    @property
    def nodes(self):
        return self.dag.nodes

    @property
    def n_cases(self):
        """Total cases behind the fit (any root CPT row-total sum)."""
        for node in self.dag.nodes:
            if not self.cpts[node].parents:
                return sum(r.total for r in self.cpts[node].rows)
        return sum(r.total for r in self.cpts[self.dag.nodes[0]].rows)


def fit_cpts(matrix, dag, parent_orders=None, source=None):
    """Maximum-likelihood CPTs for every node of the DAG.

    ``parent_orders`` optionally fixes the parent display order per node;
    the default is catalog order. Unobserved parent combinations get the
    uniform fallback row (0.5, 0.5) with zero counts.
    """
    parent_orders = parent_orders or {}
    unknown = [n for n in dag.nodes if n not in matrix.catalog]
    if unknown:
        raise ParameterError(f"nodes missing from the data: {unknown}")
    cpts = {}
    for node in dag.nodes:
        parents = tuple(parent_orders.get(node, dag.parents(node)))
        if sorted(parents) != sorted(dag.parents(node)):
            raise ParameterError(f"parent order for {node!r} does not match the DAG")
        table = contingency(matrix, parents + (node,))
        rows = []
        for combo in product((0, 1), repeat=len(parents)):
            n0 = table[combo + (0,)]
            n1 = table[combo + (1,)]
            total = n0 + n1
            if total > 0:
                p = (n0 / total, n1 / total)
            else:
                p = (0.5, 0.5)
            rows.append(CptRow(combo, p, (n0, n1), total))
        cpts[node] = Cpt(node, parents, tuple(rows))
    return BayesNet(dag, cpts, source)


def joint_enumerate(net, assignment):
    """Probability of one full assignment: the product of CPT entries."""
    if set(assignment) != set(net.nodes):
        raise ParameterError("assignment must cover every node")
    prob = 1.0
    for node in net.nodes:
        cpt = net.cpts[node]
        row = cpt.row_for(tuple(assignment[p] for p in cpt.parents))
        prob *= row.p[assignment[node]]
    return prob


def _factor_for(cpt):
    """(variables, table) pair with one axis per variable, node axis last."""
    variables = cpt.parents + (cpt.node,)
    shape = (2,) * len(variables)
    table = np.empty(shape)
    for combo in product((0, 1), repeat=len(cpt.parents)):
        row = cpt.row_for(combo)
        table[combo + (0,)] = row.p[0]
        table[combo + (1,)] = row.p[1]
    return list(variables), table


def _restrict(variables, table, node, value):
    pos = variables.index(node)
    index = [slice(None)] * len(variables)
    index[pos] = value
    return variables[:pos] + variables[pos + 1 :], table[tuple(index)]


def _expand(variables, table, union):
    """Reshape a factor table onto the union scope with singleton axes."""
    table = np.asarray(table)
    if variables:
        order = sorted(range(len(variables)), key=lambda i: union.index(variables[i]))
        table = np.transpose(table, order)
    return table.reshape([2 if v in variables else 1 for v in union])


def _multiply(av, at, bv, bt):
    union = list(av) + [v for v in bv if v not in av]
    return union, _expand(av, at, union) * _expand(bv, bt, union)


def _sum_out(variables, table, node):
    pos = variables.index(node)
    return variables[:pos] + variables[pos + 1 :], table.sum(axis=pos)


def query(net, evidence, target):
    """Exact posterior of the target node given partial evidence.

    Uses variable elimination with a min-degree order; raises
    :class:`ZeroEvidenceError` when the evidence has zero probability.
    """
    evidence = dict(evidence)
    if target in evidence:
        raise ParameterError("target must not appear in the evidence")
    unknown = [n for n in list(evidence) + [target] if n not in set(net.nodes)]
    if unknown:
        raise ParameterError(f"unknown nodes: {unknown}")
    for node, value in evidence.items():
        if value not in (0, 1):
            raise ParameterError(f"evidence value for {node!r} must be 0 or 1")

    factors = []
    for node in net.nodes:
        variables, table = _factor_for(net.cpts[node])
        for ev_node, ev_value in evidence.items():
            if ev_node in variables:
                variables, table = _restrict(variables, table, ev_node, ev_value)
        factors.append((variables, table))

    to_eliminate = [n for n in net.nodes if n != target and n not in evidence]
    while to_eliminate:
        degree = {}
        for n in to_eliminate:
            scope = set()
            for variables, _ in factors:
                if n in variables:
                    scope.update(variables)
            degree[n] = len(scope - {n})
        node = min(to_eliminate, key=lambda n: (degree[n], net.nodes.index(n)))
        to_eliminate.remove(node)
        related = [(v, t) for v, t in factors if node in v]
        factors = [(v, t) for v, t in factors if node not in v]
        variables, table = [], np.array(1.0)
        for v, t in related:
            variables, table = _multiply(variables, table, v, t)
        variables, table = _sum_out(variables, table, node)
        factors.append((variables, table))

    variables, table = [], np.array(1.0)
    for v, t in factors:
        variables, table = _multiply(variables, table, v, t)
    table = table.reshape(2)
    mass = float(table.sum())
    if mass <= 0.0:
        raise ZeroEvidenceError(evidence=evidence)
    return (float(table[0]) / mass, float(table[1]) / mass)


def evidence_support(net, target, evidence):
    """Cases behind the target's CPT rows consistent with the evidence."""
    cpt = net.cpts[target]
    fixed = {p: evidence[p] for p in cpt.parents if p in evidence}
    total = 0
    for row in cpt.rows:
        if all(row.combo[cpt.parents.index(p)] == v for p, v in fixed.items()):
            total += row.total
    return total


def refit_node(net, matrix, node):
    """New network with one node's CPT refitted; the rest are shared."""
    updated = fit_cpts(matrix, net.dag, source=net.source)
    cpts = dict(net.cpts)
    cpts[node] = updated.cpts[node]
    return BayesNet(net.dag, cpts, net.source)


def net_to_document(net):
    doc = {"dag": graph_to_document(net.dag), "cpts": []}
    for node in net.nodes:
        cpt = net.cpts[node]
        doc["cpts"].append(
            {
                "node": node,
                "parents": list(cpt.parents),
                "rows": [
                    {
                        "combo": list(r.combo),
                        "p": [r.p[0], r.p[1]],
                        "n": [r.n[0], r.n[1]],
                    }
                    for r in cpt.rows
                ],
            }
        )
    if net.source:
        doc["source"] = dict(net.source)
    return doc


def document_to_net(doc):
    dag = document_to_graph(doc["dag"])
    if not isinstance(dag, Dag):
        dag = dag.to_dag()
    cpts = {}
    for entry in doc["cpts"]:
        rows = tuple(
            CptRow(
                tuple(int(b) for b in r["combo"]),
                (float(r["p"][0]), float(r["p"][1])),
                (int(r["n"][0]), int(r["n"][1])),
                int(r["n"][0]) + int(r["n"][1]),
            )
            for r in entry["rows"]
        )
        cpts[entry["node"]] = Cpt(entry["node"], tuple(entry["parents"]), rows)
    return BayesNet(dag, cpts, doc.get("source"))


def write_net(net, path):
    text = json.dumps(net_to_document(net), indent=2, ensure_ascii=False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def read_net(path):
    with open(path, encoding="utf-8") as fh:
        return document_to_net(json.load(fh))
