#!/usr/bin/env python3
"""
Verify Determinism

Checks that the same base seed reproduces the same graph and the same Monte
Carlo summary, and that an analytic CSV is byte-identical across runs.

Usage:
    python scripts/demo/verify_determinism.py
    python scripts/demo/verify_determinism.py --n 5000 --seed 7
"""
from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

import numpy as np

# Add project root to path
ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT))

from src.cli.main import main as cli_main
from src.dist.degree import poisson_shifted
from src.dist.profiles import CliqueProfile
from src.graphgen.pipeline import generate_clustered_graph
from src.sim.monte_carlo import simulate_diffusion


def _graphs_equal(a, b) -> bool:
    return (
        a.n_vertices == b.n_vertices
        and np.array_equal(a.edges, b.edges)
        and np.array_equal(a.internal, b.internal)
        and np.array_equal(a.parent, b.parent)
    )


def main() -> int:
    parser = argparse.ArgumentParser(description="Verify seeded reproducibility")
    parser.add_argument("--n", type=int, default=2000, help="Vertices before substitution (default: 2000)")
    parser.add_argument("--seed", type=int, default=42, help="Base seed (default: 42)")
    args = parser.parse_args()

    print("=" * 70)
    print("DETERMINISM VERIFICATION TEST")
    print("=" * 70)
    print()

    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.3)
    failures = []

    # Test 1: graph generation
    print("Test 1: Graph generation")
    print("-" * 70)
    g1 = generate_clustered_graph(p, gamma, args.n, args.seed, simple_policy="erase")
    g2 = generate_clustered_graph(p, gamma, args.n, args.seed, simple_policy="erase")
    same = _graphs_equal(g1, g2)
    print(f"{'✓' if same else '❌'} {g1.n_vertices} vertices, {g1.n_edges} edges, identical: {same}")
    print()
    if not same:
        failures.append("graph generation")

    # Test 2: Monte Carlo summary
    print("Test 2: Monte Carlo summary")
    print("-" * 70)
    s1 = simulate_diffusion(p, gamma, 0.6, args.n, 5, args.seed, simple_policy="erase")
    s2 = simulate_diffusion(p, gamma, 0.6, args.n, 5, args.seed, simple_policy="erase")
    same = s1 == s2
    print(f"{'✓' if same else '❌'} giant_fraction mean {s1['giant_fraction'].mean:.6f}, identical: {same}")
    print()
    if not same:
        failures.append("Monte Carlo summary")

    # Test 3: analytic CSV
    print("Test 3: Analytic CSV")
    print("-" * 70)
    with tempfile.TemporaryDirectory() as tmp:
        outputs = [Path(tmp) / f"run{i}.csv" for i in (1, 2)]
        for out in outputs:
            cli_main(["analyze", "diffusion", "--dist", "regular:3", "--gamma", "0.5",
                      "--pi", "0.75", "--out", str(out)])
        same = outputs[0].read_bytes() == outputs[1].read_bytes()
    print(f"{'✓' if same else '❌'} byte-identical: {same}")
    print()
    if not same:
        failures.append("analytic CSV")

    print("=" * 70)
    if failures:
        print(f"❌ DETERMINISM TEST FAILED: {', '.join(failures)}")
        print("=" * 70)
        return 1
    print("✅ DETERMINISM TEST PASSED")
    print("=" * 70)
    return 0


if __name__ == "__main__":
    sys.exit(main())
