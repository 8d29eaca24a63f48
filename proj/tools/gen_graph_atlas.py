"""Write every graph on 1..7 vertices up to isomorphism, one per line: n u,v u,v ..."""
import sys

import networkx as nx


def main(path):
    with open(path, "w") as out:
        for g in nx.graph_atlas_g():
            n = g.number_of_nodes()
            if n == 0:
                continue
            edges = sorted(tuple(sorted(e)) for e in g.edges())
            out.write(" ".join([str(n)] + [f"{u},{v}" for u, v in edges]) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/atlas7.txt")
