"""Walk through the classification of all graphs on four vertices.

Every graph G gives an algebra M_{2^k} (x) C^{2^l} with 2k + l = n.  The
script groups the 11 unlabelled four-vertex graphs by k, shows one switch
move script, and checks the answer against the GF(2) rank.
"""

from ccrgraph import gf2
from ccrgraph.graphcore import Graph, canonicalize, classify, enumerate_classes, isomorphism_types


def main() -> None:
    by_k: dict[int, list[Graph]] = {}
    for mask in isomorphism_types(4):
        g = Graph.from_edge_mask(4, mask)
        by_k.setdefault(classify(g).k, []).append(g)
    for k in sorted(by_k):
        label = classify(by_k[k][0]).label
        print(f"k={k}  {label:12s}  {len(by_k[k])} types")
        for g in by_k[k]:
            print(f"    edges {g.edges()}")

    table = enumerate_classes(4)
    print(f"\nlabelled graphs per k: {table.labeled}")

    cycle = Graph.cycle(4)
    cf = canonicalize(cycle)
    print(f"\n4-cycle -> ({cf.k}, {cf.l}) in {len(cf.moves)} moves:")
    for m in cf.moves:
        print(f"    replace {m.x} by the product over {m.vertices()}")
    print(f"GF(2) rank of the adjacency matrix: {gf2.rank(cycle.adjacency())}")


if __name__ == "__main__":
    main()
