#!/usr/bin/env python3
# Copyright 2026 The Vibronic Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plots whatever vibronic CSV outputs are found in a directory."""

import argparse
import csv
import pathlib
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def col(rows, key):
    return [float(r[key]) for r in rows]


def plot_autocorr(d, out):
    rows = read(d / "autocorr.csv")
    t = col(rows, "t_fs")
    fig, ax = plt.subplots()
    ax.plot(t, col(rows, "re"), label="Re A")
    ax.plot(t, col(rows, "im"), label="Im A")
    ax.plot(t, col(rows, "abs"), "k", lw=1, label="|A|")
    ax.set_xlabel("t (fs)")
    ax.legend()
    fig.savefig(out / "autocorr.png", dpi=150)


def plot_populations(d, out):
    rows = read(d / "populations.csv")
    t = col(rows, "t_fs")
    fig, ax = plt.subplots()
    ax.plot(t, col(rows, "p_s1"), label="S1")
    ax.plot(t, col(rows, "p_s2"), label="S2")
    ax.set_xlabel("t (fs)")
    ax.set_ylabel("population")
    ax.legend()
    fig.savefig(out / "populations.png", dpi=150)


def plot_boundary(d, out):
    rows = read(d / "boundary.csv")
    t = col(rows, "t_fs")
    fig, ax = plt.subplots()
    for key in rows[0]:
        if key != "t_fs":
            ax.semilogy(t, [max(float(r[key]), 1e-16) for r in rows], label=key)
    ax.set_xlabel("t (fs)")
    ax.set_ylabel("edge-slice probability")
    ax.legend()
    fig.savefig(out / "boundary.png", dpi=150)


def plot_spectrum(d, out):
    rows = read(d / "spectrum.csv")
    fig, ax = plt.subplots()
    ax.plot(col(rows, "E_eV"), col(rows, "intensity"))
    ax.set_xlabel("E (eV)")
    ax.set_ylabel("intensity")
    fig.savefig(out / "spectrum.png", dpi=150)


def plot_shots(d, out):
    fig, ax = plt.subplots()
    for path in sorted(d.glob("shots_scan_*.csv")):
        mode = path.stem.removeprefix("shots_scan_")
        curves = defaultdict(dict)
        for r in read(path):
            curves[int(r["shots"])][r["seed"]] = float(r["tvd"])
        shots = sorted(curves)
        mean = [100 * sum(curves[s].values()) / len(curves[s]) for s in shots]
        ax.plot(shots, mean, label=mode)
    ax.set_xlabel("shots")
    ax.set_ylabel("TVD (%), mean over seeds")
    ax.set_yscale("log")
    ax.legend()
    fig.savefig(out / "shots_scan.png", dpi=150)


def plot_qpe(d, out):
    rows = read(d / "qpe_demo.csv")
    e = col(rows, "energy_eV")
    fig, ax = plt.subplots()
    ax.bar(e, col(rows, "p_gaussian"), width=0.8 * (max(e) - min(e)) / len(e), alpha=0.6, label="Gaussian input")
    ax.plot(e, col(rows, "p_eigen"), "k.", label="eigenvector input")
    ax.set_xlabel("E (eV)")
    ax.set_ylabel("probability")
    ax.legend()
    fig.savefig(out / "qpe_demo.png", dpi=150)


def plot_zpe(d, out):
    rows = read(d / "zpe_scan.csv")
    fig, ax = plt.subplots()
    groups = defaultdict(list)
    for r in rows:
        groups[(r["table"], r["convention"])].append((int(r["N"]), float(r["zpe_eV"])))
    for (table, conv), pts in sorted(groups.items()):
        pts.sort()
        ax.semilogx([p[0] for p in pts], [p[1] for p in pts], "o-", base=2, label=f"{table}, {conv}")
    ax.set_xlabel("grid points N")
    ax.set_ylabel("ZPE (eV)")
    ax.legend()
    fig.savefig(out / "zpe_scan.png", dpi=150)


PLOTS = {
    "autocorr.csv": plot_autocorr,
    "populations.csv": plot_populations,
    "boundary.csv": plot_boundary,
    "spectrum.csv": plot_spectrum,
    "shots_scan_direct.csv": plot_shots,
    "qpe_demo.csv": plot_qpe,
    "zpe_scan.csv": plot_zpe,
}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("dir", type=pathlib.Path, help="directory holding the CSV outputs")
    p.add_argument("--out", type=pathlib.Path, help="where to write PNGs (default: dir)")
    args = p.parse_args()
    out = args.out or args.dir
    out.mkdir(parents=True, exist_ok=True)
    for name, fn in PLOTS.items():
        if (args.dir / name).exists():
            fn(args.dir, out)
            print("plotted", name)


if __name__ == "__main__":
    main()
