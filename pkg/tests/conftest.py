from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gcg.caps import Caps


@pytest.fixture(scope="session")
def caps() -> Caps:
    return Caps()
