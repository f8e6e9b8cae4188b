"""Build explicit matrix models of B(G) and measure them.

The pairwise tensor model realises the relations but can collapse (the
null graph maps every generator to the identity).  The canonical model
is faithful: its 2^n words are linearly independent.
"""

from ccrgraph.graphcore import Graph
from ccrgraph.reps import (
    center_dimension,
    commutant_dimension,
    min_generator_distance,
    rep_canonical,
    rep_pairs,
    span_dimension,
)


def describe(name: str, rep) -> None:
    dist, pair = min_generator_distance(rep)
    print(
        f"{name:32s} dim={rep.dim:4d}  span={span_dimension(rep):3d}  "
        f"center={center_dimension(rep)}  commutant={commutant_dimension(rep)}  "
        f"min |u_x - u_y| = {dist:.6f} at {pair}"
    )


def main() -> None:
    for name, g in [
        ("path on 3", Graph.path(3)),
        ("triangle", Graph.complete(3)),
        ("null on 3", Graph.null(3)),
        ("star with 3 leaves", Graph.star(3)),
    ]:
        describe(f"{name} (pairs)", rep_pairs(g))
        describe(f"{name} (canonical)", rep_canonical(g))
        print()


if __name__ == "__main__":
    main()
