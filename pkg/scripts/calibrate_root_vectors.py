"""Recompute the root-vector scalars stored in ``kmsgroups.truncated.CALIBRATION``.

Prints a Python literal that can be pasted over the frozen table, and exits
nonzero if the measured values differ from it.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from kmsgroups.truncated import CALIBRATION, CANONICAL_RANK2, measure_calibration


@dataclass(frozen=True)
class CalibrationConfig:
    height: int = 6
    tags: tuple = tuple(CANONICAL_RANK2)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--height", type=int, default=CalibrationConfig.height, help="truncation height of the Lie algebra")
    cfg = CalibrationConfig(height=p.parse_args(argv).height)
    measured = {tag: measure_calibration(tag, cfg.height) for tag in cfg.tags}
    print("CALIBRATION = {")
    for tag, table in measured.items():
        body = ", ".join(f"{g}: Fraction({c.numerator}, {c.denominator})" for g, c in table.items())
        print(f"    {tag!r}: {{{body}}},")
    print("}")
    stale = [tag for tag in cfg.tags if measured[tag] != CALIBRATION[tag]]
    if stale:
        print(f"frozen table differs for {stale}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
