"""Independent families, duality, and full-matrix subalgebras.

A family A of subsets of Y gives a bipartite graph G(Y, A).  Finite
pieces of it generate full matrix algebras when the incidence pattern is
right; extend_to_full_matrix finds such a piece containing a given one.
"""

from ccrgraph.graphcore import classify
from ccrgraph.setfam import (
    FinitePair,
    SetFamily,
    densify,
    dual,
    extend_to_full_matrix,
    fk_family,
    is_independent,
    is_noncovered,
    is_separating,
    pair_subgraph,
)


def main() -> None:
    fam, legend = fk_family(2)
    print(f"tree family at depth 2: {len(fam)} members over {fam.universe_size} level sets")
    print(f"independent up to 4 sets: {is_independent(fam, 4)[0]}")
    # 22 elements is past the exhaustive cap, so check sets s of size <= 2
    print(f"separating on |s| <= 2: {is_separating(fam, max_size=2)[0]}, non-covered: {is_noncovered(fam)[0]}")
    d = dual(fam)
    print(f"dual: separating {is_separating(d)[0]}, non-covered {is_noncovered(d)[0]}")

    out, report = densify(fam, 3)
    print(f"\ndensify with 3 toggles: {report.witnessed_before} -> {report.witnessed_after} "
          f"of {report.total} (s, j) pairs witnessed; edits {report.edits}")

    power = SetFamily.power_set(4, include_empty=False)
    start = FinitePair((power.members.index(0b0011),), ())
    got = extend_to_full_matrix(power, start)
    members = [power.member(i) for i in got.f]
    print(f"\nextend member {{0,1}} of 2^Y: members {members}, elements {list(got.g)}")
    print(f"induced algebra: {classify(pair_subgraph(power, got)).label}")


if __name__ == "__main__":
    main()
