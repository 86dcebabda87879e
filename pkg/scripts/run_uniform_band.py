#!/usr/bin/env python3
"""Weak-signal contamination experiment: 50 signals from Uniform[2, 4]."""

import argparse
import json

from cdmine.simulate import SimConfig, run_experiment


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    cfg = SimConfig(
        m_signals=50,
        signal_model="uniform-band",
        lo=2.0,
        hi=4.0,
        runs=args.runs,
        seed=args.seed,
    )
    report = run_experiment(cfg)
    print(json.dumps(report.summary, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
