#!/usr/bin/env python3
"""Recompute the built-in folding catalog and print expected vs computed.

Equivalent to `coxfold catalog`, kept as a standalone experiment runner:

    python scripts/run_catalog.py [--slow] [--format json]

--slow adds the E6 row: a full enumeration of the 51840-element ambient
group, around fifteen seconds of exact arithmetic.  (The minutes-scale
path is the E6 property suite in verify_all.py --slow.)
"""

import argparse
import json
import sys

from coxfold.catalog import run_catalog


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--slow", action="store_true")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    args = parser.parse_args()

    rows = run_catalog(slow=args.slow)
    if args.format == "json":
        print(json.dumps({"rows": [r.to_dict() for r in rows]}, indent=2))
    else:
        for r in rows:
            ew = ",".join(map(str, r.expected_weights))
            cw = ",".join(map(str, r.computed_weights))
            status = "match" if r.match else "MISMATCH"
            print(
                f"{r.name:24s} expected {r.expected_type}[{ew}]|{r.expected_order}"
                f"  computed {r.computed_type}[{cw}]|{r.computed_order}"
                f"  {status}  ({r.seconds:.1f}s)"
            )
        print(f"{sum(r.match for r in rows)}/{len(rows)} rows match")
    return 0 if all(r.match for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
