"""Run every acceptance check over the catalog and write a JSON report."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from twisted_codes import suite


@dataclass
class Config:
    out: Path = Path("results/catalog_report.json")
    skip_stretch: bool = False


def main(cfg: Config) -> int:
    results = suite.run_all(skip_stretch=cfg.skip_stretch)
    for r in results:
        print(r.line())
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    payload = {"config": {k: str(v) for k, v in asdict(cfg).items()}, "results": [r.to_json() for r in results]}
    cfg.out.write_text(json.dumps(payload, indent=2, default=str))
    return int(any(r.gating and not r.passed for r in results))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--skip-stretch", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(Config(out=a.out, skip_stretch=a.skip_stretch)))
