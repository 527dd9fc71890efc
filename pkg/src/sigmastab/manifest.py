"""Built-in manifest of thirteen binary codes and the batch run that rebuilds them.

Each entry fixes the factor names of g and h under the coset naming of
:mod:`sigmastab.ring` (factor ``i`` has beta^i as a root), so the choice of
primitive root does not change the selection.  Construction failures and any
disagreement in k or in the consecutive-root run are hard errors.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .blueprint import CodeBlueprint, construct
from .distance import DEFAULT_BUDGET, DistanceReport, analyze, format_run
from .errors import ConstructionError


@dataclass(frozen=True)
class ManifestRow:
    n: int
    k: int
    g: tuple[int, ...]
    h: tuple[int, ...]
    run: tuple[int, ...]
    # expected detect/correct pairs, kept for comparison only
    bound_pair: tuple[int, int]
    brute_pair: tuple[int, int]
    m: int = -1


MANIFEST: tuple[ManifestRow, ...] = (
    ManifestRow(5, 1, (0,), (2,), (2, 3), (1, 0), (1, 0)),
    ManifestRow(9, 1, (0,), (2, 6), (5, 6), (1, 0), (1, 0)),
    ManifestRow(11, 1, (0,), (1,), (3, 4, 5), (1, 0), (2, 1)),
    ManifestRow(13, 1, (0,), (2,), (5, 6, 7, 8), (2, 1), (4, 2)),
    ManifestRow(15, 1, (0,), (1, 5, 6, 7), (4, 5, 6, 7), (2, 1), (3, 1)),
    ManifestRow(15, 5, (0, 7), (1, 5, 6), (4, 5, 6), (1, 0), (2, 1)),
    ManifestRow(15, 9, (0, 3, 7), (1, 5), (4, 5), (1, 0), (1, 0)),
    ManifestRow(17, 1, (0,), (2, 6), (6, 7, 8, 9, 10, 11), (3, 1), (5, 2)),
    ManifestRow(19, 1, (0,), (1,), (4, 5, 6, 7), (2, 1), (3, 1)),
    # h = h2 h7: the only product with beta^7, beta^8 as roots that also
    # covers the factor of degree 1 left over by g
    ManifestRow(21, 13, (0, 3, 5, 9), (2, 7), (7, 8), (1, 0), (1, 0)),
    ManifestRow(25, 1, (0,), (1, 5), (4, 5, 6), (1, 0), (2, 1)),
    ManifestRow(27, 7, (0, 3), (1, 9), (9, 10), (1, 0), (1, 0)),
    ManifestRow(29, 1, (0,), (1,), (4, 5, 6, 7), (2, 1), (3, 1)),
)

COLUMNS = ("n", "k", "g", "h", "consecutive_roots", "thm8_detect", "thm8_correct", "brute_detect", "brute_correct")


def factor_label(prefix: str, indices) -> str:
    return "".join(f"{prefix}{i}" for i in indices) or "1"


def roots_label(exponents) -> str:
    return format_run(exponents)


def build_row(row: ManifestRow) -> CodeBlueprint:
    bp = construct(row.n, 2, row.m, g_extra=row.g, h_select=row.h)
    if bp.g_indices != tuple(sorted(row.g)):
        raise ConstructionError(f"n={row.n}: g factors {bp.g_indices} differ from manifest {row.g}")
    if bp.k != row.k:
        raise ConstructionError(f"n={row.n}: constructed k={bp.k}, manifest says {row.k}")
    return bp


def run_row(row: ManifestRow, budget: int | None = DEFAULT_BUDGET) -> tuple[CodeBlueprint, DistanceReport]:
    bp = build_row(row)
    report = analyze(bp, modes=("sigma-nonzero",), budget=budget)
    if report.run_exponents != row.run:
        raise ConstructionError(
            f"n={row.n}: consecutive roots {report.run_exponents} differ from manifest {row.run}"
        )
    return bp, report


def table_rows(budget: int | None = DEFAULT_BUDGET, rows=MANIFEST) -> list[list]:
    out = []
    for row in rows:
        bp, rep = run_row(row, budget)
        out.append(
            [
                bp.n,
                bp.k,
                factor_label("g", bp.g_indices),
                factor_label("h", bp.h_indices),
                roots_label(rep.run_exponents),
                rep.thm8_detect,
                rep.thm8_correct,
                rep.brute_detect,
                rep.brute_correct,
            ]
        )
    return out


def table_csv(budget: int | None = DEFAULT_BUDGET, rows=MANIFEST) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    w.writerows(table_rows(budget, rows))
    return buf.getvalue()
