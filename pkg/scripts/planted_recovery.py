"""Run the planted-recovery trial over many rng seeds and summarise the pass rate.

Usage: python scripts/planted_recovery.py --seeds 20 [--users 1000 --tweets 50] [--out results.json]
"""

import argparse
import json
import time
from dataclasses import asdict

from stancenet.benchmark import planted_params, planted_trial
from stancenet.lexicon import load_lexicons


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--users", type=int, default=1000, help="users per group")
    ap.add_argument("--tweets", type=int, default=50, help="tweets per user")
    ap.add_argument("--out", help="write per-seed results as JSON")
    args = ap.parse_args()

    categories = load_lexicons()
    results = []
    start = time.perf_counter()
    print(f"{'seed':>4} {'recovery':>9} {'z1':>8} {'z2':>8}  {'EI pro/anti (mention)':>22}"
          f"  {'EC pro/anti (mention)':>22}  pass")
    for seed in range(args.first_seed, args.first_seed + args.seeds):
        r = planted_trial(planted_params(seed, args.users, args.tweets), categories)
        results.append(r)
        ei, ec = r.ei["mention"], r.ec["mention"]
        print(f"{seed:>4} {r.recovery:>9.4f} {r.z1:>8.2f} {r.z2:>8.2f}  "
              f"{ei[0]:>10.3f} / {ei[1]:<9.3f}  {ec[0]:>10.4f} / {ec[1]:<9.4f}  "
              f"{'yes' if r.passed else 'no: ' + ', '.join(k for k, v in r.checks.items() if not v)}")
    elapsed = time.perf_counter() - start
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} seeds passed in {elapsed:.1f}s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump([{**asdict(r), "checks": r.checks} for r in results], fh, indent=1)


if __name__ == "__main__":
    main()
