#!/usr/bin/env python3
"""Regenerate the bundled reference data under data/.

The matrix is synthetic: 150 cases over 17 binary legal concepts, built so
that the reference joint counts of (N8, N2, N4, N10) and of (N11, N15) are
reproduced exactly while every other concept is sampled from a fixed seeded
generator. Run from the repository root:

    python3 scripts/build_reference_dataset.py
"""

import csv
import json
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent
SEED = 20240917

CONCEPTS = [
    ("N1", "witness testimony", "testimony"),
    ("N2", "prosecutorial delay or inability", "process"),
    ("N3", "testimony challenged", "testimony"),
    ("N4", "riot", "crime"),
    ("N5", "death sentence", "punishment"),
    ("N6", "life imprisonment", "punishment"),
    ("N7", "homicide murder", "crime"),
    ("N8", "evidence inconsistency", "evidence"),
    ("N9", "expert witness testimony", "testimony"),
    ("N10", "political rivalry", "motive"),
    ("N11", "physical assault", "crime"),
    ("N12", "evidence insufficient", "evidence"),
    ("N13", "investigation agency", "process"),
    ("N14", "revenge", "motive"),
    ("N15", "property dispute", "motive"),
    ("N16", "homicide not murder", "crime"),
    ("N17", "rarest of the rare case", "punishment"),
]

# (N8, N2, N4, N10) pattern -> case count; the (1, 1, 0, *) row is empty.
MOTIVE_BLOCK = [
    ((0, 0, 0, 0), 125),
    ((0, 0, 1, 0), 9),
    ((0, 1, 0, 0), 1),
    ((0, 1, 1, 0), 1),
    ((1, 0, 0, 0), 12),
    ((1, 0, 1, 1), 1),
    ((1, 1, 1, 1), 1),
]

# (N11, N15) pattern -> case count.
ASSAULT_BLOCK = [
    ((0, 0), 80),
    ((1, 0), 65),
    ((1, 1), 5),
]

N_CASES = 150


def expand(block):
    rows = []
    for pattern, count in block:
        rows.extend([pattern] * count)
    return np.array(rows, dtype=np.uint8)


def main():
    rng = np.random.default_rng(SEED)
    ids = [c[0] for c in CONCEPTS]
    col = {cid: i for i, cid in enumerate(ids)}
    values = np.zeros((N_CASES, len(ids)), dtype=np.uint8)

    motive = expand(MOTIVE_BLOCK)
    assert motive.shape[0] == N_CASES
    motive = motive[rng.permutation(N_CASES)]
    for j, cid in enumerate(("N8", "N2", "N4", "N10")):
        values[:, col[cid]] = motive[:, j]

    assault = expand(ASSAULT_BLOCK)
    assert assault.shape[0] == N_CASES
    assault = assault[rng.permutation(N_CASES)]
    for j, cid in enumerate(("N11", "N15")):
        values[:, col[cid]] = assault[:, j]

    def bernoulli(p):
        return (rng.random(N_CASES) < p).astype(np.uint8)

    def conditional(parent, p_if_one, p_if_zero):
        draw = rng.random(N_CASES)
        return np.where(parent == 1, draw < p_if_one, draw < p_if_zero).astype(np.uint8)

    values[:, col["N1"]] = bernoulli(0.80)
    values[:, col["N3"]] = conditional(values[:, col["N1"]], 0.45, 0.05)
    values[:, col["N7"]] = bernoulli(0.75)
    values[:, col["N16"]] = conditional(values[:, col["N7"]], 0.05, 0.60)
    values[:, col["N9"]] = bernoulli(0.40)
    values[:, col["N12"]] = bernoulli(0.15)
    values[:, col["N17"]] = bernoulli(0.06)
    values[:, col["N5"]] = conditional(values[:, col["N17"]], 0.70, 0.05)
    values[:, col["N6"]] = conditional(values[:, col["N5"]], 0.10, 0.55)
    values[:, col["N13"]] = bernoulli(0.20)
    values[:, col["N14"]] = bernoulli(0.25)

    for j, cid in enumerate(ids):
        assert 0 < values[:, j].sum() < N_CASES, f"{cid} is constant"

    data_dir = ROOT / "data"
    data_dir.mkdir(exist_ok=True)

    with open(data_dir / "cases.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case_id", *ids])
        for i in range(N_CASES):
            writer.writerow([f"case_{i + 1:03d}", *map(int, values[i])])

    with open(data_dir / "concepts.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "name", "category"])
        writer.writerows(CONCEPTS)

    # Two annotated cases: one with an exact match plus two partial overlaps
    # (score 0.67, flagged under 0.8), one in perfect agreement.
    spans = [
        ("case_001", "annotator_1", 104, 187, "N4"),
        ("case_001", "annotator_1", 233, 321, "N7"),
        ("case_001", "annotator_1", 560, 601, "N7"),
        ("case_001", "annotator_2", 104, 187, "N4"),
        ("case_001", "annotator_2", 240, 318, "N7"),
        ("case_001", "annotator_2", 512, 590, "N7"),
        ("case_002", "annotator_1", 45, 120, "N11"),
        ("case_002", "annotator_1", 300, 366, "N6"),
        ("case_002", "annotator_2", 45, 120, "N11"),
        ("case_002", "annotator_2", 300, 366, "N6"),
    ]
    with open(data_dir / "annotations_sample.jsonl", "w", encoding="utf-8") as fh:
        for case_id, annotator, start, end, concept in spans:
            fh.write(
                json.dumps(
                    {
                        "case_id": case_id,
                        "annotator": annotator,
                        "start": start,
                        "end": end,
                        "concept": concept,
                    }
                )
                + "\n"
            )

    # A small expert-curated consensus graph used by the demo server and the
    # README walkthrough. Weights are agreement counts.
    reference = {
        "nodes": ids,
        "edges": [
            {"from": "N1", "to": "N3", "weight": 2},
            {"from": "N2", "to": "N10", "weight": 3},
            {"from": "N4", "to": "N10", "weight": 4},
            {"from": "N5", "to": "N17", "weight": 2},
            {"from": "N8", "to": "N10", "weight": 4},
            {"from": "N11", "to": "N15", "weight": 3},
        ],
    }
    with open(data_dir / "reference.graph", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(reference, indent=2) + "\n")

    print(f"wrote {data_dir / 'cases.csv'}")
    print(f"wrote {data_dir / 'concepts.csv'}")
    print(f"wrote {data_dir / 'annotations_sample.jsonl'}")
    print(f"wrote {data_dir / 'reference.graph'}")


if __name__ == "__main__":
    main()
