"""Build snelling actions on random distributive lattices J(Q) and check the action properties.

For each sample: the relations hold, the action is good, the labeling is
recovered from the action, and omega F_P equals the characteristic of the character.
"""
from __future__ import annotations

import argparse
import json
import random
from collections import Counter
from dataclasses import dataclass

from snelling import generators as g
from snelling import hecke as h
from snelling.labeling import verify_snelling
from snelling.qsym import ch_of_action, f_p, omega_involution


@dataclass
class RandomCheckConfig:
    samples: int = 200
    max_elements: int = 12
    max_k: int = 6
    seed: int = 0


def check(cfg: RandomCheckConfig) -> dict:
    rng = random.Random(cfg.seed)
    tally = Counter()
    failures = []
    for trial in range(cfg.samples):
        P, lab = g.random_j_of_poset(rng, cfg.max_elements, cfg.max_k)
        A = h.action_from_snelling(P, lab)
        results = {
            "snelling": bool(verify_snelling(P, lab)),
            "hecke": bool(h.verify_hecke(A)),
            "good": bool(h.verify_good(P, A)),
            "round trip": h.reconstruct_labeling(P, A) == lab,
            "omega F_P = ch": omega_involution(f_p(P)) == ch_of_action(A),
        }
        tally.update(k for k, ok in results.items() if ok)
        tally["size " + str(len(P))] += 1
        if not all(results.values()):
            failures.append({"trial": trial, "elements": P.names, "failed": [k for k, ok in results.items() if not ok]})
    return {"samples": cfg.samples, "tally": dict(sorted(tally.items())), "failures": failures}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(RandomCheckConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = RandomCheckConfig(**vars(ap.parse_args()))
    print(json.dumps(check(cfg), indent=1))


if __name__ == "__main__":
    main()
