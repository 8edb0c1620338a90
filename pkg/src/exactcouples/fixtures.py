"""Shipped fixture couples, regenerable deterministically.

Run ``python -m exactcouples.fixtures DIR`` to (re)write the fixture
documents; the test suite asserts the checked-in files match.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

from .couple import ExactCouple
from .generators import (
    alpha_zero_couple,
    decorate,
    degenerate_couple,
    double_couple,
    massey_couple,
    massey_fixture,
    zero_couple,
)
from .serialize import couple_to_doc, dumps_canonical


def fixture_couples() -> dict[str, ExactCouple]:
    massey, _ = massey_couple(massey_fixture(), random.Random(0))
    return {
        "zero": zero_couple(),
        "degenerate": degenerate_couple(2),
        "alpha_zero": alpha_zero_couple(),
        "massey_vect": massey,
        "massey_trivial_filt": decorate(massey, "trivial"),
        "f1_filt": decorate(double_couple(alpha_zero_couple()), "fixture"),
    }


def write_fixtures(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, couple in fixture_couples().items():
        path = directory / f"{name}.json"
        path.write_text(dumps_canonical(couple_to_doc(couple)))
        written.append(path)
    return written


def fixtures_dir() -> Path:
    """The checked-in fixtures directory at the repository root."""
    return Path(__file__).resolve().parents[2] / "fixtures"


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else fixtures_dir()
    for p in write_fixtures(target):
        print(p)
