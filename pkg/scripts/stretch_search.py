"""Search principal ideals of the F_9 skew systems on order-6 groups for good codes."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from twisted_codes.catalog import stretch_systems
from twisted_codes.codes import LinearCode, search_codes
from twisted_codes.ring import TwistedRing


@dataclass
class Config:
    side: str = "left"
    target: tuple[int, int, int] = (6, 3, 4)
    budget: int = 10**6
    top: int = 5


def main(cfg: Config) -> dict:
    out = {}
    for entry in stretch_systems():
        R = TwistedRing(entry.system)
        hits, found = search_codes(R, cfg.side, target=cfg.target, budget=cfg.budget)
        table = {}
        for h in hits:
            key = str(h.params)
            table[key] = table.get(key, 0) + 1
        example = next((h for h in hits if (h.params.n, h.params.k, h.params.d) == cfg.target), None)
        if example is not None:
            C = LinearCode(R.principal_ideal(R.elem(example.generator), cfg.side))
            wd = C.weight_distribution().tolist()
        else:
            wd = None
        out[entry.name] = {
            "target_found": found,
            "param_counts": table,
            "best": [h.to_json() for h in hits[: cfg.top]],
            "target_example": example.to_json() if example else None,
            "target_weight_distribution": wd,
        }
        print(f"{entry.name}: {len(hits)} codes, target {cfg.target} {'found' if found else 'not found'}")
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--side", choices=["left", "right"], default=Config.side)
    ap.add_argument("--budget", type=int, default=Config.budget)
    a = ap.parse_args()
    print(json.dumps(main(Config(side=a.side, budget=a.budget)), indent=2))
