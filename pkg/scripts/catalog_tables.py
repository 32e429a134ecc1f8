#!/usr/bin/env python3
"""Tables of Hom, Ext and Hom_Lambda between the stored invariants.

For each n, prints Hom_Z6(a, b), Ext^1_Z6(a, b), Hom_Lambda(a, b) and the
kernel of the forgetful map Hom_Lambda -> Hom_Z6, over all pairs of
catalog entries.  The kernel column shows where the mod-n data adds maps
that the integral complexes cannot see.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ksix import catalog
from ksix.coeff import hom_lambda, kernel_of_restriction
from ksix.sixcomplex import ext1_z6, hom_z6


@dataclass(frozen=True)
class Config:
    ns: tuple[int, ...] = (2, 3)
    names: tuple[str, ...] = ("e0", "e1", "Se1")


def table(config: Config, n: int) -> list[tuple[str, ...]]:
    rows = []
    for a in config.names:
        for b in config.names:
            A, B = catalog.get(a, n).invariant, catalog.get(b, n).invariant
            rows.append((a, b,
                         str(hom_z6(A.integral, B.integral).group),
                         str(ext1_z6(A.integral, B.integral)),
                         str(hom_lambda(A, B).group),
                         str(kernel_of_restriction(A, B))))
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=list(Config.ns))
    a = p.parse_args(argv)
    config = Config(ns=tuple(a.n))
    header = ("source", "target", "Hom_Z6", "Ext_Z6", "Hom_Lambda", "ker(forget)")
    for n in config.ns:
        rows = [header] + table(config, n)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        print(f"n = {n}")
        for r in rows:
            print("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
