"""Quantified arguments from a fitted network: deltas, sufficiency, narratives.

All claims are associations observed in prior cases, so narratives say
"predicts", never "causes", and every probability cites its case support.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations, product

from .bayesnet import evidence_support, query
from .errors import ParameterError, ZeroEvidenceError

NO_SUPPORT_TEXT = "No prior case matches this evidence; no probability is asserted."


@dataclass(frozen=True)
class ArgumentReport:
    """One quantified claim with its provenance."""

    target: tuple
    evidence: dict
    p_with: float
    p_baseline: float
    delta: float
    supporting_total: int
    sufficient: bool
    narrative: str = ""


def delta_argument(net, target, evidence, baseline=None):
    """Compare the target's probability under evidence against a baseline.

    The baseline defaults to the empty assignment (the marginal). Evidence
    that no prior case supports propagates as :class:`ZeroEvidenceError`.
    """
    node, value = target
    if value not in (0, 1):
        raise ParameterError("target value must be 0 or 1")
    evidence = dict(evidence)
    baseline = dict(baseline or {})
    if node in evidence or node in baseline:
        raise ParameterError("target must not appear in evidence or baseline")
    p_with = query(net, evidence, node)[value]
    p_baseline = query(net, baseline, node)[value]
    support = evidence_support(net, node, evidence)
    sufficient = p_with in (0.0, 1.0) and support >= 1
    return ArgumentReport(
        target=(node, value),
        evidence=evidence,
        p_with=p_with,
        p_baseline=p_baseline,
        delta=p_with - p_baseline,
        supporting_total=support,
        sufficient=sufficient,
    )


def find_sufficient_conditions(net, target, max_evidence_size):
    """Minimal evidence assignments that make the target value certain.

    Assignments are enumerated by increasing size and catalog order; an
    assignment qualifies when the posterior for the target value is exactly
    1.0 and at least one prior case backs the matching CPT rows. Supersets
    of reported assignments are skipped, so only minimal conditions appear.
    """
    node, value = target
    others = [n for n in net.nodes if n != node]
    if not 0 < max_evidence_size <= len(others):
        raise ParameterError("max_evidence_size must be in 1..(number of nodes - 1)")
    found = []

    def is_superset(evidence):
        return any(all(evidence.get(k) == v for k, v in f.items()) for f, _ in found)

    for size in range(0, max_evidence_size + 1):
        for subset in combinations(others, size):
            for values in product((0, 1), repeat=size):
                evidence = dict(zip(subset, values))
                if is_superset(evidence):
                    continue
                try:
                    p = query(net, evidence, node)[value]
                except ZeroEvidenceError:
                    continue
                if p != 1.0:
                    continue
                support = evidence_support(net, node, evidence)
                if support >= 1:
                    found.append((evidence, support))
    return found


def _clause(catalog, node, value):
    name = catalog.name(node) if catalog is not None else node
    return f"{name} is reported" if value == 1 else f"{name} is not reported"


def _percent(delta):
    if abs(delta) < 0.005:
        return "0%"
    return f"{delta * 100:+.0f}%"


def render_argument(report, catalog=None, n_cases=None):
    """Deterministic narrative for a report; identical inputs give identical text."""
    node, value = report.target
    target_clause = _clause(catalog, node, value)
    if report.evidence:
        evidence_clause = " and ".join(
            _clause(catalog, k, v) for k, v in sorted(report.evidence.items())
        )
        opening = f"If it is established that {evidence_clause}, "
    else:
        opening = "With no evidence established, "
    total = f" of {n_cases}" if n_cases is not None else ""
    text = (
        f"{opening}the probability that {target_clause} is {report.p_with:.2f} "
        f"(baseline {report.p_baseline:.2f}, change {_percent(report.delta)}), "
        f"supported by {report.supporting_total}{total} prior cases."
    )
    if report.sufficient and report.p_with == 1.0:
        text += " This evidence predicts the outcome in every supporting case."
    return text


def ranked_arguments(net, target, max_evidence_size, catalog=None):
    """Sufficient conditions first, then single-evidence claims by |delta|."""
    node, value = target
    reports = []
    for evidence, _ in find_sufficient_conditions(net, target, max_evidence_size):
        reports.append(delta_argument(net, target, evidence))
    sufficient_keys = {tuple(sorted(r.evidence.items())) for r in reports}
    singles = []
    for other in net.nodes:
        if other == node:
            continue
        for ev_value in (0, 1):
            evidence = {other: ev_value}
            if tuple(sorted(evidence.items())) in sufficient_keys:
                continue
            try:
                singles.append(delta_argument(net, target, evidence))
            except ZeroEvidenceError:
                continue
    singles.sort(
        key=lambda r: (-abs(r.delta), sorted(r.evidence.items()))
    )
    reports.extend(singles)
    n = net.n_cases
    return [
        replace(r, narrative=render_argument(r, catalog, n_cases=n)) for r in reports
    ]
