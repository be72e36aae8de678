"""CSV and figure rendering for CLI reports.

Every report path writes a delimited cases file and a PNG summary next to it.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _ensure_dir(path):
    os.makedirs(path, exist_ok=True)


def write_verify_report(report, out_dir: str):
    """cases CSV plus a pass/fail (or value-vs-expected) bar figure."""
    _ensure_dir(out_dir)
    csv_path = os.path.join(out_dir, f"{report.suite}.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case", "expected", "computed", "pass"])
        for c in report.cases:
            writer.writerow([c.name, c.expected, c.computed, c.passed])

    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(report.cases)), 4))
    numeric = all(isinstance(c.expected, (int, Fraction)) for c in report.cases)
    xs = range(len(report.cases))
    if numeric:
        ax.bar(xs, [float(c.computed) if isinstance(c.computed, (int, Fraction)) else 0 for c in report.cases],
               color=["tab:green" if c.passed else "tab:red" for c in report.cases], label="computed")
        ax.plot(xs, [float(c.expected) for c in report.cases], "k_", markersize=12, label="expected")
        ax.legend(frameon=False)
    else:
        ax.bar(xs, [1] * len(report.cases),
               color=["tab:green" if c.passed else "tab:red" for c in report.cases])
        ax.set_yticks([])
    ax.set_xticks(list(xs))
    ax.set_xticklabels([c.name for c in report.cases], rotation=90, fontsize=6)
    ax.set_title(f"suite {report.suite}: {'pass' if report.passed else 'FAIL'}")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, f"{report.suite}.png"), dpi=150)
    plt.close(fig)
    return csv_path


def write_blocks_report(d, l, blocks, out_dir: str):
    _ensure_dir(out_dir)
    csv_path = os.path.join(out_dir, "blocks.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega", "stabilizer_order", "parahoric_type"])
        for b in blocks:
            writer.writerow([",".join(map(str, b.omega)), b.order, " ".join(map(str, sorted(b.parahoric_type)))])

    fig, ax = plt.subplots(figsize=(5, 4.5))
    orders = sorted({b.order for b in blocks})
    cmap = plt.get_cmap("viridis", max(len(orders), 2))
    color_of = {o: cmap(i) for i, o in enumerate(orders)}
    if d.rank == 2:
        for b in blocks:
            ax.scatter(*b.omega, s=140, color=color_of[b.order])
            ax.annotate(str(b.order), b.omega, ha="center", va="center", fontsize=7, color="white")
        ax.set_xlabel("coefficient of pi_1")
        ax.set_ylabel("coefficient of pi_2")
    else:
        xs = [b.omega[0] for b in blocks]
        ax.stem(xs, [b.order for b in blocks])
        ax.set_xlabel("coefficient of pi_1")
        ax.set_ylabel("stabilizer order")
    ax.set_title(f"{d.series_type}{d.rank}, l={l}: alcove representatives")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "blocks.png"), dpi=150)
    plt.close(fig)
    return csv_path


def write_character_report(d, lam, char, out_dir: str):
    _ensure_dir(out_dir)
    csv_path = os.path.join(out_dir, "character.csv")
    rows = sorted(char.c.items())
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["weight", "coefficient"])
        for k, v in rows:
            writer.writerow([",".join(map(str, k)), repr(v)])

    fig, ax = plt.subplots(figsize=(5, 4.5))
    if d.rank == 2:
        sizes = []
        for k, v in rows:
            c = v.as_const() if hasattr(v, "as_const") else None
            sizes.append(80 * float(c if c is not None else 1))
        ax.scatter([k[0] for k, _ in rows], [k[1] for k, _ in rows], s=sizes)
        ax.set_xlabel("coefficient of pi_1")
        ax.set_ylabel("coefficient of pi_2")
    else:
        xs = [k[0] for k, _ in rows]
        ys = []
        for _, v in rows:
            c = v.as_const() if hasattr(v, "as_const") else None
            ys.append(float(c if c is not None else 1))
        ax.stem(xs, ys)
        ax.set_xlabel("weight")
        ax.set_ylabel("multiplicity")
    ax.set_title(f"ch V{tuple(lam)} for {d.series_type}{d.rank}")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "character.png"), dpi=150)
    plt.close(fig)
    return csv_path
