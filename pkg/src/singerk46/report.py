"""CSV tables and PNG figures summarising solution counts and neighbourhoods."""

from __future__ import annotations

import csv
import os
import random
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .normgraph import ng_build  # noqa: E402
from .normsys import six_solution_census  # noqa: E402
from .tower import TowerCtx  # noqa: E402


def census_rows(qs) -> list[dict]:
    rows = []
    for q in qs:
        for sols, count in six_solution_census(TowerCtx.build(q, 3)).items():
            rows.append({"q": q, "solutions": sols, "num_A": count})
    return rows


def neighbourhood_rows(qs, samples: int, seed: int) -> list[dict]:
    rows = []
    for q in qs:
        g = ng_build(q, 4)
        bits = g.materialize()
        rng = random.Random(seed)
        hist: Counter = Counter()
        for _ in range(samples):
            S = rng.sample(range(g.n), 4)
            acc = bits[S[0]] & bits[S[1]] & bits[S[2]] & bits[S[3]]
            hist[acc.bit_count()] += 1
        for size in sorted(hist):
            rows.append({"q": q, "common_neighbours": size, "num_sets": hist[size], "samples": samples, "seed": seed})
    return rows


def _write_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def _bar_panel(rows, key, value, path, xlabel, ylabel, title):
    qs = sorted({r["q"] for r in rows})
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.8 / len(qs)
    for i, q in enumerate(qs):
        sub = [r for r in rows if r["q"] == q]
        xs = [r[key] + (i - (len(qs) - 1) / 2) * width for r in sub]
        ax.bar(xs, [r[value] for r in sub], width=width, label=f"q={q}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(out_dir: str, *, census_qs=(4, 5, 7, 8, 9), graph_qs=(3, 4, 5),
                 samples: int = 20000, seed: int = 0) -> list[str]:
    """Write the tables and figures; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    census = census_rows(census_qs)
    p = os.path.join(out_dir, "solution_census.csv")
    _write_csv(p, census)
    written.append(p)
    p = os.path.join(out_dir, "solution_census.png")
    _bar_panel(census, "solutions", "num_A", p, "solutions of the three-norm system",
               "number of A", "Solution counts over A in the norm-one group")
    written.append(p)
    nb = neighbourhood_rows(graph_qs, samples, seed)
    p = os.path.join(out_dir, "common_neighbours.csv")
    _write_csv(p, nb)
    written.append(p)
    p = os.path.join(out_dir, "common_neighbours.png")
    _bar_panel(nb, "common_neighbours", "num_sets", p, "common neighbours of a random 4-set",
               "number of sampled 4-sets", f"NG(q,4), {samples} seeded samples per q")
    written.append(p)
    return written
