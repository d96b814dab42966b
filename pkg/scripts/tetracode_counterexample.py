"""Twisted group codes of length 4 over F_3 that no abelian group code matches.

Both F_3^alpha[C4] (x^4 = -1) and one twisted F_3^alpha[V4] contain a 2-dimensional
ideal with weight distribution [1, 0, 0, 8, 0], the [4,2,3]_3 tetracode. Every
2-dimensional ideal of F_3[C4] and F_3[V4] has minimum distance at most 2, so the
reduction to an abelian group code cannot exist for these ideals.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from twisted_codes.abelianize import abelian_reduce
from twisted_codes.catalog import by_name
from twisted_codes.codes import LinearCode
from twisted_codes.errors import ReductionStalled
from twisted_codes.ring import TwistedRing


@dataclass
class Config:
    twisted: tuple[str, ...] = ("F3^a1[C4]", "F3^a7[V4]")
    untwisted: tuple[str, ...] = ("F3[C4]", "F3[V4]")
    dim_K: int = 2


def best_distance(name: str, dim_K: int) -> tuple[int, list]:
    R = TwistedRing(by_name(name).system)
    best, dists = 0, []
    for side in ("left", "right"):
        for I in R.enumerate_ideals(side):
            if I.dim_K == dim_K:
                C = LinearCode(I)
                if C.min_distance() > best:
                    best, dists = C.min_distance(), C.weight_distribution().tolist()
    return best, dists


def main(cfg: Config) -> dict:
    report = {"untwisted": {}, "twisted": {}}
    for name in cfg.untwisted:
        d, wd = best_distance(name, cfg.dim_K)
        report["untwisted"][name] = {"best_d": d, "weight_distribution": wd}
    for name in cfg.twisted:
        d, wd = best_distance(name, cfg.dim_K)
        R = TwistedRing(by_name(name).system)
        stalled = 0
        for I in R.enumerate_ideals("left"):
            if I.dim_K == cfg.dim_K and LinearCode(I).min_distance() == d:
                try:
                    abelian_reduce(I)
                except ReductionStalled:
                    stalled += 1
        report["twisted"][name] = {"best_d": d, "weight_distribution": wd, "stalled_left_ideals": stalled}
    return report


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.parse_args()
    print(json.dumps(main(Config()), indent=2))
