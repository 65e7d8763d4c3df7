"""Write the named lemma-sweep corpus to a directory as edge-list files.

    python3 scripts/write_standard_corpus.py out/ && quasiconn sweep out/ --format json -o report.json
"""

import argparse
import re
from pathlib import Path

from quasiconn.corpus import standard_corpus
from quasiconn.io import write_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("output")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random", type=int, default=12, help="number of random 5-regular hosts")
    args = ap.parse_args()
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    graphs = standard_corpus(args.seed, args.random)
    for name, g in graphs:
        write_graph(g, out / (re.sub(r"[^A-Za-z0-9_+-]", "_", name) + ".el"))
    print(f"{len(graphs)} graphs -> {out}")


if __name__ == "__main__":
    main()
