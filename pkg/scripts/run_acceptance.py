#!/usr/bin/env python3
"""Run the acceptance gate and show one pass/fail line per criterion.

Thin wrapper over pytest so the gate can be invoked as a script:

    python3 scripts/run_acceptance.py
"""
from __future__ import annotations

import os
import sys

import pytest


def main() -> int:
    repo = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    target = os.path.join(repo, "tests", "test_acceptance.py")
    return pytest.main([target, "-v", "-s", "--no-header"])


if __name__ == "__main__":
    sys.exit(main())
