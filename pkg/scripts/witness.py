"""Check the A2~ witness word across truncation heights and print the three verdicts per height."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from kmsgroups.cli import witness_report


@dataclass(frozen=True)
class WitnessConfig:
    min_height: int = 2
    max_height: int = 10


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--min-height", type=int, default=WitnessConfig.min_height)
    p.add_argument("--max-height", type=int, default=WitnessConfig.max_height)
    p.add_argument("--json", action="store_true")
    a = p.parse_args(argv)
    cfg = WitnessConfig(a.min_height, a.max_height)
    reports = [witness_report(N) for N in range(cfg.min_height, cfg.max_height + 1)]
    ok = all(r["phi_identity"] and r["embed_identity"] and r["free_product_length"] == 8 for r in reports)
    if a.json:
        print(json.dumps({"config": asdict(cfg), "reports": reports, "verified": ok}))
    else:
        print("N\tphi=1\tembed=1\tfree length\tamalgam length")
        for r in reports:
            print(f"{r['N']}\t{r['phi_identity']}\t{r['embed_identity']}\t{r['free_product_length']}\t{r['amalgam_length']}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
