#!/usr/bin/env python
"""
qkv - Entry Point
=================

Exact verification of the quaternionic Kähler Killing spinor identities.

Usage:
    python qkv.py verify --check all --format markdown
    python qkv.py verify --check appendix-b-re-claim --n 2..3
    python qkv.py dims --n 2
    python qkv.py dump --operator mu --n 2 --h q --index 3

Exit codes:
    0 - every check passed or was reported
    1 - at least one check failed
    2 - usage error
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli.qkv import main

if __name__ == "__main__":
    main()
