#!/usr/bin/env python3
"""Builds the Python extension module and exercises every exported call.

Run from anywhere:

    python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(["cargo", "build", "-p", "steiner-orient-py"], cwd=ROOT, check=True)
    debug = ROOT / "target" / "debug"
    for name in ("libsteiner_orient_py.so", "libsteiner_orient_py.dylib"):
        built = debug / name
        if built.exists():
            break
    else:
        sys.exit(f"no built extension library under {debug}")
    staging = Path(tempfile.mkdtemp(prefix="steiner-orient-py-"))
    shutil.copy2(built, staging / "steiner_orient_py.so")
    sys.path.insert(0, str(staging))
    import steiner_orient_py

    return steiner_orient_py


def main():
    so = build_and_import()

    # Solve, verify, oracle, and both text formats on a single edge.
    edge = so.Instance(2, [(0, 1)], 0, [1], 1)
    dirs = so.solve(edge)
    assert dirs == [0], dirs
    assert so.verify(edge, dirs)
    assert so.oracle(edge) == dirs
    assert so.Instance.parse(edge.serialize()).serialize() == edge.serialize()
    assert so.Instance.parse(edge.structured()).serialize() == edge.serialize()
    assert so.solve(so.Instance(2, [(0, 1)], 0, [1], 2)) is None

    # A square with one diagonal routes three arc-disjoint paths at best.
    square = so.Instance(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], 0, [2], 2)
    w = so.solve(square)
    assert w is not None and so.verify(square, w)
    assert so.maximize_k(square) == 3

    # Normalizations keep the verdict.
    assert so.solve(so.cap_parallel(square)) is not None
    degk = so.reduce_degree_k(square)
    assert so.solve(degk) is not None
    assert so.solve(so.three_regularize(degk)) is not None

    # Enumeration, minor embedding, and catalog decisions.
    entries, complete = so.enumerate_minimal(1, 2, 6)
    assert complete and len(entries) == 1
    assert entries[0].vertex_count == 4
    host = so.Instance(4, [(0, 3), (3, 1), (3, 2)], 0, [1, 2], 1)
    assert so.minor_embeds(entries[0], host)
    assert so.catalog_decide(host, entries, True) == "yes"

    # Formula constructions: feasibility tracks satisfiability.
    mnae = so.generate_mnae_k2(3, [(0, 1, 2)])
    assert (mnae.vertex_count, mnae.edge_count, mnae.k) == (18, 29, 2)
    wit = so.solve(mnae)
    assert wit is not None and so.verify(mnae, wit)
    assert so.lift_k(mnae, 3).k == 3
    unsat = so.generate_mnae_k2(3, [(0, 0, 0)])
    assert so.solve(unsat) is None

    # Per-pair demands on an undirected cycle.
    cycle = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert so.solve_demands(4, cycle, [(0, 2, 1), (2, 0, 1)]) is not None
    # Two disjoint paths to 2 claim all four edges, leaving no way back.
    assert so.solve_demands(4, cycle, [(0, 2, 2), (2, 0, 1)]) is None

    print("ok: python bindings answer correctly")


if __name__ == "__main__":
    main()
