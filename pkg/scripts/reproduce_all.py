#!/usr/bin/env python3
"""Run every reproduction pipeline for several values of n.

Prints one line per claim and a summary per pipeline; exits with status 1
if any claim fails.  ``--json FILE`` also writes the results.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from ksix.reproduce import PIPELINES


@dataclass(frozen=True)
class Config:
    ns: tuple[int, ...] = (2, 3, 5)
    pipelines: tuple[str, ...] = tuple(PIPELINES)
    json_path: str | None = None


@dataclass
class Outcome:
    pipeline: str
    n: int
    seconds: float
    claims: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.claims)


def run(config: Config) -> list[Outcome]:
    outcomes = []
    for name in config.pipelines:
        ns = (config.ns[0],) if name == "ck" else config.ns  # the CK claims do not depend on n
        for n in ns:
            start = time.perf_counter()
            claims = PIPELINES[name](n)
            elapsed = time.perf_counter() - start
            out = Outcome(name, n, elapsed, [c._asdict() | {"line": c.line()} for c in claims])
            for c in claims:
                print(c.line())
            status = "PASS" if out.ok else "FAIL"
            print(f"{status} {name} n={n}: {sum(c.ok for c in claims)}/{len(claims)} claims "
                  f"({elapsed:.2f}s)")
            outcomes.append(out)
    return outcomes


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=list(Config.ns))
    p.add_argument("--only", nargs="+", choices=list(PIPELINES), default=list(PIPELINES))
    p.add_argument("--json", dest="json_path")
    a = p.parse_args(argv)
    config = Config(tuple(a.n), tuple(a.only), a.json_path)
    outcomes = run(config)
    if config.json_path:
        with open(config.json_path, "w") as fh:
            json.dump({"config": asdict(config),
                       "results": [asdict(o) | {"ok": o.ok} for o in outcomes]}, fh, indent=2, default=str)
    failed = [o for o in outcomes if not o.ok]
    print(f"{'PASS' if not failed else 'FAIL'} overall: {len(outcomes) - len(failed)}/{len(outcomes)} runs")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
