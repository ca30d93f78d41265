#!/usr/bin/env python3
"""
TWMDG Embed
Temporal walk embeddings and link prediction for transaction graphs

Usage:
    python twmdg_embed.py synth -o synth.csv --seed 7
    python twmdg_embed.py stats -i synth.csv
    python twmdg_embed.py eval -i synth.csv --method twmdg-biased --alpha 0.5 --d 128 --k 4 --l 10 --r 20
"""

import sys

from src.cli.main import dispatch

if __name__ == "__main__":
    sys.exit(dispatch(sys.argv[1:]))
