"""Plain-text artifacts: CSV tables and the JSON run manifest.

Floats are written with 17 significant digits so that reading and rewriting a
file reproduces it byte for byte.  Line endings are LF.
"""

from __future__ import annotations

import csv
import json
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

POINTS_HEADER = ["id", "x", "y"]
EDGES_HEADER = ["i", "j"]
BETWEENNESS_HEADER = ["id", "gamma_raw", "gamma_pair_normalized"]
ANALYTIC_HEADER = ["eps", "g_star", "g_disk"]
FIELD_HEADER = ["x", "y", "g", "g_star"]
PROFILE_HEADER = ["eps", "mean_gamma", "normalized", "count", "stderr"]
CONVERGENCE_HEADER = ["rho", "realizations", "linf", "l2"]
BOUNDARY_HEADER = ["id", "eps", "g_star_est", "gamma_norm", "is_boundary_pos", "is_boundary_meas"]
HEADS_HEADER = ["rank", "id", "gamma_raw"]


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


@contextmanager
def _open_out(path):
    if str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh


def write_csv(path, header, rows) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])


def read_csv(path, header=None) -> list[list[str]]:
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    if header is not None and rows[0] != list(header):
        raise ValueError(f"{path}: expected header {','.join(header)}, got {','.join(rows[0])}")
    return rows[1:]


def write_points(path, positions) -> None:
    write_csv(path, POINTS_HEADER, ((k, x, y) for k, (x, y) in enumerate(positions)))


def read_points(path) -> np.ndarray:
    rows = read_csv(path, POINTS_HEADER)
    ids = [int(r[0]) for r in rows]
    if ids != list(range(len(rows))):
        raise ValueError(f"{path}: ids must be 0..N-1 in order")
    return np.array([[float(r[1]), float(r[2])] for r in rows]).reshape(-1, 2)


def write_edges(path, edges) -> None:
    write_csv(path, EDGES_HEADER, ((int(i), int(j)) for i, j in edges))


def read_edges(path) -> np.ndarray:
    rows = read_csv(path, EDGES_HEADER)
    return np.array([[int(r[0]), int(r[1])] for r in rows], dtype=np.int64).reshape(-1, 2)


def write_manifest(path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="ascii")


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text(encoding="ascii"))
