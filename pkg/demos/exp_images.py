"""Zero loci of B-S ideals pushed to the torus by s -> exp(-2 pi i s).

Different powers of K give different loci but the same torus image.

    python demos/exp_images.py
"""

from logbs.bsideal import bs_ideal
from logbs.frontend import parse_poly
from logbs.monoid import minimal_generators, power
from logbs.support import decompose_locus, exp_image_of_locus, exp_images_equal


JOBS = [
    (("x",), ["x^2"], [(1,)]),
    (("x", "y"), ["y^2 - x^3"], [(1,)]),
    (("x", "y"), ["x", "x"], [(1, 1)]),
    (("x", "y"), ["x", "y", "x*y"], [(1, 1, 1)]),
]


def image(res):
    return exp_image_of_locus(decompose_locus(res.generators, res.r))


def main():
    for V, texts, K in JOBS:
        F = [parse_poly(t, V) for t in texts]
        K = minimal_generators(K)
        one = bs_ideal(F, K, certificates=False)
        two = bs_ideal(F, power(K, 2), certificates=False)
        print(f"F = ({', '.join(texts)}), K = {K}")
        print(f"  Exp(Z(B^K))   = {' u '.join(map(str, image(one)))}")
        print(f"  Exp(Z(B^K^2)) = {' u '.join(map(str, image(two)))}")
        print(f"  equal: {exp_images_equal(image(one), image(two))}")
        print()


if __name__ == "__main__":
    main()
