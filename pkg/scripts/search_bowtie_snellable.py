"""Find the smallest graded bounded posets that are snellable yet contain a bowtie."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from snelling.corpus import graded_bounded_posets
from snelling.labeling import find_snelling, labeling_to_names
from snelling.poset import is_bowtie_free, is_lattice


@dataclass
class SearchConfig:
    max_elements: int = 8
    limit: int = 3


def search(cfg: SearchConfig):
    hits = []
    for P in graded_bounded_posets(cfg.max_elements):
        bowtie = is_bowtie_free(P)
        if bowtie:
            continue
        labeling = find_snelling(P)
        if labeling is None:
            continue
        hits.append((P, labeling, bowtie.witness))
        if len(hits) >= cfg.limit:
            break
    return hits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-elements", type=int, default=SearchConfig.max_elements)
    ap.add_argument("--limit", type=int, default=SearchConfig.limit)
    cfg = SearchConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    for P, labeling, witness in search(cfg):
        print(json.dumps({
            "elements": P.names,
            "covers": sorted(list(c) for c in P.named_covers()),
            "lattice": is_lattice(P),
            "bowtie": list(witness),
            "labels": {f"{a}|{b}": v for (a, b), v in sorted(labeling_to_names(P, labeling).items())},
        }))


if __name__ == "__main__":
    main()
