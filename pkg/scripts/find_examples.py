"""Scan small rank-2 and rank-3 braidings for instances of each relation family.

Prints, per family, the braidings with the smallest order N and the fewest
roots.  Used to choose the bundled example inputs.
"""

import argparse
import itertools
import json
import math
import sys

from nichols.cartanweyl import Bicharacter, CartanError, RootSystemError, root_system
from nichols.quotient import Nichols
from nichols.relations import emit_relations, root_vector


def connected(chi):
    th = chi.theta
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(th):
            if j not in seen and chi.e_double(i, j):
                seen.add(j)
                stack.append(j)
    return len(seen) == th


def power_cost(chi, rs):
    """Estimated number of terms in the largest root-vector power, as log10."""
    nq = Nichols(chi)
    worst = 0.0
    for b in rs.cartan_orbit:
        n = chi.order_of(chi.e_pair(b, b))
        xb = root_vector(chi, b, nq)
        if xb is None or n < 2:
            continue
        worst = max(worst, n * math.log10(max(xb.num_terms(), 1)))
    return round(worst, 2)


def scan(theta, orders, max_roots, need_connected=False, families=()):
    best = {}
    for N in orders:
        if theta == 2:
            combos = itertools.product(range(1, N), range(1, N), range(N))
            mats = ([[a, c], [0, b]] for a, b, c in combos)
        else:
            combos = itertools.product(range(1, N), repeat=3)
            mats = (
                [[a, c12, c13], [0, b, c23], [0, 0, d]]
                for a, b, d in combos
                for c12 in range(N)
                for c13 in range(N)
                for c23 in range(N)
            )
        for e in mats:
            chi = Bicharacter(N, e)
            if need_connected and not connected(chi):
                continue
            try:
                rs = root_system(chi, max_objects=64, max_height=12)
            except (CartanError, RootSystemError):
                continue
            if len(rs.positive) > max_roots:
                continue
            try:
                rels = emit_relations(chi, rs, powers=False)
            except Exception as exc:  # report and keep scanning
                print("error", N, e, exc, file=sys.stderr)
                continue
            if families and not any(r.family in families for r in rels):
                continue
            size = (power_cost(chi, rs), len(rs.positive), N)
            for r in rels:
                if families and r.family not in families:
                    continue
                cur = best.get(r.family)
                if cur is None or size < cur[0]:
                    best[r.family] = (size, N, e, list(r.indices))
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--theta", type=int, default=2)
    ap.add_argument("--orders", type=int, nargs="+", default=list(range(2, 13)))
    ap.add_argument("--max-roots", type=int, default=40)
    ap.add_argument("--connected", action="store_true")
    ap.add_argument("--families", nargs="*", default=())
    args = ap.parse_args()
    best = scan(args.theta, args.orders, args.max_roots, args.connected, set(args.families))
    for fam, (size, N, e, idx) in sorted(best.items()):
        print(json.dumps({"family": fam, "cost": size[0], "roots": size[1], "N": N, "exps": e, "indices": idx}))


if __name__ == "__main__":
    main()
