"""Recompute the tweet-level z-scores of the reported linguistic table from its rounded rates.

Usage: python scripts/recompute_table3.py [--json]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from table3 import N_ANTI, N_PRO, ROWS  # noqa: E402

from stancenet.lingstats import format_p, p_value, z_prop  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    ap.add_argument("--tolerance", type=float, default=1.0)
    args = ap.parse_args()

    rows = []
    for name, pro, anti, reported in ROWS:
        z = z_prop(pro / 100, N_PRO, anti / 100, N_ANTI)
        rows.append({"category": name, "t1_pro": pro, "t1_anti": anti, "reported_z1": reported,
                     "recomputed_z1": round(z, 2), "diff": round(z - reported, 2),
                     "p": format_p(p_value(z)), "within": abs(z - reported) <= args.tolerance})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"n_pro={N_PRO} n_anti={N_ANTI} tolerance=±{args.tolerance}")
    print(f"{'category':<24}{'pro%':>7}{'anti%':>7}{'reported':>10}{'recomputed':>12}{'diff':>7}")
    for r in rows:
        flag = "" if r["within"] else "  <- outside"
        print(f"{r['category']:<24}{r['t1_pro']:>7}{r['t1_anti']:>7}{r['reported_z1']:>10.2f}"
              f"{r['recomputed_z1']:>12.2f}{r['diff']:>7.2f}{flag}")
    print(f"{sum(r['within'] for r in rows)}/{len(rows)} rows within tolerance")


if __name__ == "__main__":
    main()
