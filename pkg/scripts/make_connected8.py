"""Write every connected graph on 8 vertices, up to isomorphism, as graph6.

Every connected graph has a vertex whose removal leaves it connected, so
extending each 7-vertex graph by a vertex with a nonempty neighbourhood
reaches every connected 8-vertex graph.  Duplicates are removed with a
Weisfeiler-Lehman hash bucket and an exact isomorphism test.

    python3 scripts/make_connected8.py tests/data/connected8.g6
"""

import argparse
import itertools
import sys
from collections import defaultdict

import networkx as nx

EXPECTED = 11117


def connected8():
    small = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7]
    buckets = defaultdict(list)
    for g in small:
        for r in range(1, 8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_edges_from((7, v) for v in nbrs)
                if not nx.is_connected(h):
                    continue
                key = (h.number_of_edges(), tuple(sorted(d for _, d in h.degree())),
                       nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                if not any(nx.is_isomorphic(h, o) for o in buckets[key]):
                    buckets[key].append(h)
    out = [g for key in sorted(buckets, key=str) for g in buckets[key]]
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("output")
    args = ap.parse_args(argv)
    graphs = connected8()
    lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs)
    with open(args.output, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{len(lines)} graphs written to {args.output}")
    return 0 if len(lines) == EXPECTED else 1


if __name__ == "__main__":
    sys.exit(main())
