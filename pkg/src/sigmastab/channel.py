"""Monte Carlo block-error rates through a depolarizing channel.

Every trial sends the all-zero codeword, draws a physical error, looks up the
coset leader for its syndrome and counts a block error whenever the residual
(error minus leader) is nonzero or the syndrome has no leader.  Residuals that
happen to lie in the stabilizer still count: degeneracy is not credited.

Randomness comes from numpy's Philox generator.  Trials are cut into
fixed-size chunks and chunk j of grid point i draws from the substream
``SeedSequence(seed, spawn_key=(i, j))``, so results do not depend on how
chunks are spread over workers.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .decoder import SyndromeTable, table_decode
from .errors import PreconditionError

MODELS = ("depolarizing-split", "independent-xz")
CHUNK = 8192


@dataclass(frozen=True)
class ChannelParams:
    prob: float
    model: str = "depolarizing-split"
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise PreconditionError(f"unknown channel model {self.model!r}")
        if not 0.0 <= self.prob <= 1.0 or math.isnan(self.prob):
            raise PreconditionError(f"probability {self.prob} outside [0, 1]")
        if self.trials < 1:
            raise PreconditionError("trials must be positive")


@dataclass(frozen=True)
class QberPoint:
    code: str
    prob: float
    trials: int
    errors: int

    @property
    def qber(self) -> float:
        return self.errors / self.trials

    @property
    def stderr(self) -> float:
        q = self.qber
        return math.sqrt(q * (1 - q) / self.trials)


def sample_errors(prob: float, n: int, p: int, rng: np.random.Generator, size: int, model: str = "depolarizing-split"):
    """``size`` physical error rows (a | b).

    depolarizing-split: each position is hit with probability ``prob`` and
    then takes one of the p^2 - 1 nonzero (a_i, b_i) uniformly (X, Y, Z with
    prob/3 each for p = 2).  independent-xz: a_i and b_i are hit
    independently with probability ``prob``, taking a uniform nonzero value.
    """
    ChannelParams(prob, model)
    if model == "depolarizing-split":
        hit = rng.random((size, n)) < prob
        kind = rng.integers(1, p * p, size=(size, n))
        a = np.where(hit, kind % p, 0)
        b = np.where(hit, kind // p, 0)
    else:
        a = np.where(rng.random((size, n)) < prob, rng.integers(1, p, size=(size, n)), 0)
        b = np.where(rng.random((size, n)) < prob, rng.integers(1, p, size=(size, n)), 0)
    return np.concatenate([a, b], axis=1).astype(np.int64)


def sample_error(params: ChannelParams, n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    return sample_errors(params.prob, n, p, rng, 1, params.model)[0]


def substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(key))))


def _count_chunk(args) -> int:
    table, prob, model, seed, i, j, size = args
    rng = substream(seed, i, j)
    errors = sample_errors(prob, table.n, table.p, rng, size, model)
    return int(table_decode(table, errors).sum())


def _workers() -> int:
    v = os.environ.get("SIGMASTAB_WORKERS")
    return max(1, int(v)) if v else 1


def run_qber(
    table: SyndromeTable | None,
    probs: Sequence[float],
    *,
    trials: int = 10_000,
    seed: int = 0,
    model: str = "depolarizing-split",
    code: str = "",
    workers: int | None = None,
) -> list[QberPoint]:
    """One QberPoint per probability on the grid."""
    if table is None:
        raise PreconditionError("run_qber needs a syndrome table")
    workers = workers or _workers()
    out = []
    for i, prob in enumerate(probs):
        ChannelParams(prob, model, trials, seed)
        jobs = []
        for j, start in enumerate(range(0, trials, CHUNK)):
            jobs.append((table, float(prob), model, seed, i, j, min(CHUNK, trials - start)))
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(workers) as pool:
                errors = sum(pool.map(_count_chunk, jobs))
        else:
            errors = sum(map(_count_chunk, jobs))
        out.append(QberPoint(code, float(prob), trials, errors))
    return out


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (inclusive stop) or a comma-separated list."""
    if ":" in spec:
        start, stop, step = (float(x) for x in spec.split(":"))
        if step <= 0:
            raise PreconditionError("grid step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(x) for x in spec.split(",") if x.strip()]


CSV_FIELDS = ("code", "prob", "trials", "errors", "qber", "stderr")


def points_to_csv(points: Sequence[QberPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for pt in points:
        w.writerow([pt.code, repr(pt.prob), pt.trials, pt.errors, f"{pt.qber:.10g}", f"{pt.stderr:.10g}"])
    return buf.getvalue()


def points_from_csv(text: str) -> list[QberPoint]:
    rows = csv.DictReader(io.StringIO(text))
    return [QberPoint(r["code"], float(r["prob"]), int(r["trials"]), int(r["errors"])) for r in rows]


def points_to_dat(points: Sequence[QberPoint]) -> str:
    """Whitespace-separated columns for gnuplot: prob qber stderr."""
    lines = [f"# {points[0].code if points else ''}", "# prob qber stderr"]
    lines += [f"{pt.prob:.6g} {pt.qber:.8g} {pt.stderr:.8g}" for pt in points]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# crossings


@dataclass(frozen=True)
class Crossing:
    first: str
    second: str
    prob: float | None  # None: no crossing on the grid
    below_better: str | None  # the code with lower QBER just below the crossing


@dataclass(frozen=True)
class ThresholdReport:
    crossings: tuple[Crossing, ...]
    estimate: float | None

    def describe(self) -> str:
        lines = []
        for c in self.crossings:
            if c.prob is None:
                lines.append(f"{c.first} vs {c.second}: no crossing on grid")
            else:
                lines.append(f"{c.first} vs {c.second}: crossing at {c.prob:.6g} ({c.below_better} lower below it)")
        lines.append("threshold estimate: " + ("no crossing on grid" if self.estimate is None else f"{self.estimate:.6g}"))
        return "\n".join(lines)


def pair_crossing(x: Sequence[QberPoint], y: Sequence[QberPoint], min_separation: float = 0.0) -> Crossing:
    """First sign change of qber_x - qber_y, linearly interpolated.

    Points where the difference is within ``min_separation`` combined
    standard errors count as ties and are skipped; if every point ties the
    curves are indistinguishable and the first grid point is reported.
    """
    probs = [pt.prob for pt in x]
    if probs != [pt.prob for pt in y]:
        raise PreconditionError("QBER curves are on different grids")
    name_x, name_y = (x[0].code, y[0].code) if x else ("", "")
    diff = np.array([a.qber - b.qber for a, b in zip(x, y)])
    noise = np.array([math.hypot(a.stderr, b.stderr) for a, b in zip(x, y)])
    sign = np.where(np.abs(diff) <= min_separation * noise, 0, np.sign(diff)).astype(int)
    if not len(sign):
        return Crossing(name_x, name_y, None, None)
    if not sign.any():
        return Crossing(name_x, name_y, probs[0], None)
    idx = [i for i in range(len(sign)) if sign[i]]
    for i0, i1 in zip(idx, idx[1:]):
        if sign[i0] != sign[i1]:
            # interpolate across the closest pair of opposite-signed points
            d0, d1 = diff[i0], diff[i1]
            t = d0 / (d0 - d1)
            prob = probs[i0] + t * (probs[i1] - probs[i0])
            better = name_x if sign[i0] < 0 else name_y
            return Crossing(name_x, name_y, float(prob), better)
    return Crossing(name_x, name_y, None, None)


def find_threshold(curves: Mapping[str, Sequence[QberPoint]], min_separation: float = 0.0) -> ThresholdReport:
    """Crossings for every pair of curves plus their median as the estimate."""
    names = list(curves)
    if len(names) < 2:
        raise PreconditionError("need at least two QBER curves")
    out = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            out.append(pair_crossing(curves[names[i]], curves[names[j]], min_separation))
    found = [c.prob for c in out if c.prob is not None]
    estimate = float(np.median(found)) if found else None
    return ThresholdReport(tuple(out), estimate)
