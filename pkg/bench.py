#!/usr/bin/env python3
"""
Entry point for the benchmark CLI
Run this from the project root directory: python bench.py bench --n 1000 --s 1000
"""
import sys

from app.modules.bench_cli.cli import main

if __name__ == "__main__":
    sys.exit(main())
