"""Span-level inter-annotator agreement with partial-overlap credit.

Two annotators agree exactly (Correct) when start, end and concept all
match; they agree partially when overlapping spans carry the same concept;
a shared span with different concepts, or a span the other annotator does
not have at all, counts as Missing. Partial matches earn half weight.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import AnnotationInputError, DataError, ParameterError

CORRECT, PARTIAL, MISMATCH = 0, 1, 2


@dataclass(frozen=True)
class AnnotationSpan:
    case_id: str
    annotator: str
    start: int
    end: int
    concept: str

    def __post_init__(self):
        if self.start < 0 or self.end <= self.start:
            raise DataError(
                f"invalid span offsets ({self.start}, {self.end}) in case {self.case_id!r}"
            )

    @property
    def key(self):
        return (self.start, self.end, self.concept)


@dataclass(frozen=True)
class AgreementResult:
    correct: int
    partial: int
    missing: int
    precision: float
    recall: float
    f_beta: float
    beta: float


def _match_class(a, b):
    if (a.start, a.end) == (b.start, b.end):
        return CORRECT if a.concept == b.concept else MISMATCH
    if a.concept == b.concept and a.start < b.end and b.start < a.end:
        return PARTIAL
    return None


def pair_agreement(a, b, beta=1.0):
    """Greedy one-to-one matching of two annotators' spans for one case.

    Candidate pairs are ranked Correct before Partial before same-span
    mismatches and within a rank by span keys, so the outcome is symmetric
    in the two annotators. Unmatched spans on either side count as Missing.
    """
    if beta <= 0:
        raise ParameterError("beta must be positive")
    a = list(a)
    b = list(b)
    cases = {s.case_id for s in a} | {s.case_id for s in b}
    if len(cases) > 1:
        raise AnnotationInputError(f"spans mix case ids: {sorted(cases)}")

    candidates = []
    for i, sa in enumerate(a):
        for j, sb in enumerate(b):
            cls = _match_class(sa, sb)
            if cls is not None:
                lo, hi = sorted((sa.key, sb.key))
                candidates.append((cls, lo, hi, i, j))
    candidates.sort(key=lambda c: c[:3])

    matched_a, matched_b = set(), set()
    counts = {CORRECT: 0, PARTIAL: 0, MISMATCH: 0}
    for cls, _, _, i, j in candidates:
        if i in matched_a or j in matched_b:
            continue
        matched_a.add(i)
        matched_b.add(j)
        counts[cls] += 1

    c = counts[CORRECT]
    p = counts[PARTIAL]
    m = counts[MISMATCH]
    m += (len(a) - len(matched_a)) + (len(b) - len(matched_b))
    denom = c + m + p
    agreement = (c + 0.5 * p) / denom if denom else 1.0
    precision = recall = agreement
    if precision + recall == 0:
        f_beta = 0.0
    else:
        f_beta = (
            (1 + beta**2) * precision * recall / (beta**2 * precision + recall)
        )
    return AgreementResult(c, p, m, precision, recall, f_beta, beta)


def case_iaa(spans_by_annotator, beta=1.0):
    """Mean pairwise agreement score over all annotator pairs of one case."""
    annotators = sorted(spans_by_annotator)
    if len(annotators) < 2:
        raise AnnotationInputError("need at least 2 annotators")
    scores = []
    for i, first in enumerate(annotators):
        for second in annotators[i + 1 :]:
            scores.append(
                pair_agreement(
                    spans_by_annotator[first], spans_by_annotator[second], beta
                ).f_beta
            )
    return sum(scores) / len(scores)


def flag_low(case_scores, threshold=0.8):
    """Case ids scoring strictly below the threshold, sorted."""
    if not 0 <= threshold <= 1:
        raise ParameterError("threshold must lie in [0, 1]")
    return sorted(c for c, s in case_scores.items() if s < threshold)


def read_spans_jsonl(path):
    """One span per line: {"case_id", "annotator", "start", "end", "concept"}."""
    spans = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                spans.append(
                    AnnotationSpan(
                        case_id=str(record["case_id"]),
                        annotator=str(record["annotator"]),
                        start=int(record["start"]),
                        end=int(record["end"]),
                        concept=str(record["concept"]),
                    )
                )
            except DataError:
                raise DataError(f"invalid span at line {line_no}", row=line_no) from None
            except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
                raise DataError(
                    f"malformed record at line {line_no}: {exc}", row=line_no
                ) from None
    return spans


def score_cases(spans, beta=1.0):
    """Per-case agreement scores for a flat list of spans.

    Cases annotated by fewer than two people are skipped (there is nothing
    to compare).
    """
    by_case = {}
    for span in spans:
        by_case.setdefault(span.case_id, {}).setdefault(span.annotator, []).append(span)
    scores = {}
    for case_id in sorted(by_case):
        groups = by_case[case_id]
        if len(groups) >= 2:
            scores[case_id] = case_iaa(groups, beta)
    return scores
