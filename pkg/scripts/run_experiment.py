#!/usr/bin/env python3
"""
Repository-local wrapper around the `mcvd-mimo` console script.

Example:
  python scripts/run_experiment.py ber-sweep --config configs/default.yaml --jobs 4 --out outputs/ber
"""
import os, sys
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.experiments.cli import main

if __name__ == "__main__":
    sys.exit(main())
