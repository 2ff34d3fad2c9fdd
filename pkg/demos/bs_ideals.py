"""Bernstein-Sato ideals of tuples along a monoid ideal K.

The same tuple gives different ideals for different K; the
certificates show which operator produces each relation.

    python demos/bs_ideals.py
"""

from logbs.bsideal import bs_ideal
from logbs.frontend import parse_poly
from logbs.support import decompose_locus

JOBS = [
    (["x", "y"], [(1, 1)]),
    (["x", "y"], [(1, 0), (0, 1)]),
    (["x", "y"], [(2, 1)]),
    (["x", "x"], [(1, 1)]),
    (["x", "x*y"], [(1, 1)]),
]


def main():
    V = ("x", "y")
    for texts, K in JOBS:
        F = [parse_poly(t, V) for t in texts]
        res = bs_ideal(F, K)
        print(f"F = ({', '.join(texts)}), K = <{', '.join(map(str, K))}>")
        for g in res.generators:
            print(f"  generator  {g}")
        locus = decompose_locus(res.generators, res.r)
        print(f"  zero locus {' u '.join(c.to_str(res.svars) for c in locus)}")
        for cert in res.certificates:
            ops = ", ".join(f"{P} on f^{list(v)}" for P, v in cert.witnesses)
            print(f"  witness    {ops}")
        print()


if __name__ == "__main__":
    main()
