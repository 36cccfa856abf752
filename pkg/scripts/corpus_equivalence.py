"""Compare the direct M-chain search with the snelling search over every small lattice.

Prints one JSON line per element count and a summary line, including the
posets (not just lattices) that are snellable, for context.
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass

from snelling.corpus import graded_bounded_posets
from snelling.labeling import find_snelling
from snelling.poset import is_bowtie_free, is_lattice
from snelling.supersolvable import is_supersolvable_direct


@dataclass
class EquivalenceConfig:
    max_elements: int = 9


def run(cfg: EquivalenceConfig) -> dict:
    rows: dict[int, Counter] = {}
    disagreements = []
    for P in graded_bounded_posets(cfg.max_elements):
        row = rows.setdefault(len(P), Counter())
        row["posets"] += 1
        snellable = find_snelling(P) is not None
        row["snellable posets"] += snellable
        row["bowtie-free"] += bool(is_bowtie_free(P))
        if not is_lattice(P):
            continue
        row["lattices"] += 1
        direct = is_supersolvable_direct(P).supersolvable
        row["supersolvable"] += direct
        row["snellable lattices"] += snellable
        if direct != snellable:
            disagreements.append({"elements": P.names, "covers": sorted(map(list, P.named_covers()))})
    return {"by_size": {k: dict(v) for k, v in sorted(rows.items())}, "disagreements": disagreements}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-elements", type=int, default=EquivalenceConfig.max_elements)
    cfg = EquivalenceConfig(max_elements=ap.parse_args().max_elements)
    start = time.perf_counter()
    result = run(cfg)
    for size, row in result["by_size"].items():
        print(json.dumps({"size": size, **row}))
    print(json.dumps({
        "lattices": sum(r.get("lattices", 0) for r in result["by_size"].values()),
        "disagreements": len(result["disagreements"]),
        "seconds": round(time.perf_counter() - start, 2),
    }))
    for d in result["disagreements"]:
        print(json.dumps(d))


if __name__ == "__main__":
    main()
