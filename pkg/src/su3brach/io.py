"""Trajectory CSV and plot-script output.

One row per sample: ``t`` followed by the real and imaginary parts of U
in row-major order.  Floats are written with ``repr`` so a re-read is
bit-exact.
"""
from __future__ import annotations

import csv
from pathlib import Path
from typing import TextIO

import numpy as np

DIM = 3


def csv_header(dim: int = DIM) -> list[str]:
    cols = ["t"]
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            cols += [f"re_u{i}{j}", f"im_u{i}{j}"]
    return cols


def write_trajectory(stream: TextIO, times, mats) -> None:
    times = np.asarray(times, dtype=float)
    mats = np.asarray(mats, dtype=np.complex128)
    if mats.shape != (times.size, DIM, DIM):
        raise ValueError(f"expected {times.size} matrices of shape {DIM}x{DIM}")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(csv_header())
    for t, u in zip(times, mats):
        flat = u.ravel()
        row = [repr(float(t))]
        for z in flat:
            row += [repr(float(z.real)), repr(float(z.imag))]
        w.writerow(row)


def read_trajectory(stream: TextIO) -> tuple[np.ndarray, np.ndarray]:
    r = csv.reader(stream)
    header = next(r, None)
    if header != csv_header():
        raise ValueError("not a trajectory CSV (unexpected header)")
    times, mats = [], []
    for lineno, row in enumerate(r, start=2):
        if len(row) != 1 + 2 * DIM * DIM:
            raise ValueError(f"line {lineno}: expected {1 + 2 * DIM * DIM} columns, got {len(row)}")
        vals = [float(x) for x in row]
        times.append(vals[0])
        z = np.array(vals[1::2]) + 1j * np.array(vals[2::2])
        mats.append(z.reshape(DIM, DIM))
    return np.array(times), np.array(mats, dtype=np.complex128).reshape(-1, DIM, DIM)


def plot_script(csv_path: str | Path, title: str = "U(t)") -> str:
    """A gnuplot script drawing |U_ij(t)|^2 for every entry."""
    lines = [
        "set datafile separator ','",
        "set key outside",
        f"set title '{title}'",
        "set xlabel 't'",
        "set ylabel '|U_ij|^2'",
    ]
    parts = []
    for i in range(DIM):
        for j in range(DIM):
            re_col = 2 + 2 * (i * DIM + j)
            parts.append(
                f"'{csv_path}' using 1:(${re_col}**2 + ${re_col + 1}**2) "
                f"every ::1 with lines title 'U{i + 1}{j + 1}'"
            )
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"
