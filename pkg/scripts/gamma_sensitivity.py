"""How the slack schedule (gamma) and the dilution variant change stance coverage and accuracy.

Builds one synthetic corpus with sparse seed usage, then propagates with several
gamma values, with and without dilution, and scores against the planted labels.

Usage: python scripts/gamma_sensitivity.py [--seed-rate 0.05] [--gammas 1 5 50 500]
"""

import argparse

from stancenet.pipeline import detect_stances, prepare
from stancenet.propagation import Stance
from stancenet.synth import SynthParams, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed-rate", type=float, default=0.05)
    ap.add_argument("--users", type=int, default=300)
    ap.add_argument("--tweets", type=int, default=20)
    ap.add_argument("--gammas", type=int, nargs="+", default=[1, 5, 50, 500])
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args()

    params = SynthParams(users_per_group=args.users, tweets_per_user=args.tweets,
                         seed_hashtag_rate=args.seed_rate, shared_hashtag_rate=0.6,
                         group_hashtag_rate=0.4, rng_seed=args.rng_seed)
    corpus, truth = generate(params)
    full, _ = prepare(corpus)
    seeds = {h: 1.0 for h in params.seeds["pro"]} | {h: -1.0 for h in params.seeds["anti"]}

    print(f"{'gamma':>6} {'dilution':>9} {'hashtags':>9} {'labeled users':>14} {'accuracy':>9}")
    for dilution in (False, True):
        for gamma in args.gammas:
            res = detect_stances(full, seeds, gamma=gamma, literal_dilution=dilution)
            labeled = [u for u, s in res.stances.label.items() if s is not Stance.UNLABELED]
            correct = sum(1 for u in labeled if res.stances.label[u].value == truth["users"][u])
            acc = correct / len(labeled) if labeled else float("nan")
            print(f"{gamma:>6} {str(dilution):>9} {len(res.graph.valence):>4}/{len(res.graph.nodes):<4}"
                  f" {len(labeled):>14} {acc:>9.4f}")


if __name__ == "__main__":
    main()
