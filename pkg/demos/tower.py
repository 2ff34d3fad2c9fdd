"""The tower B^{<j>} for F = (x): the loci grow, the torus image does not.

    python demos/tower.py
"""

from logbs.bsideal import support_tower
from logbs.frontend import parse_poly


def main():
    tower = support_tower([parse_poly("x", ("x",))], [(1,)], jmax=4)
    for level in tower.levels:
        b = level.result.generators[0]
        exp = " u ".join(map(str, level.exp_image))
        print(f"j = {level.j}: b = {b}")
        print(f"       Exp-image {exp}")
    print(f"Exp-images coincide across levels: {tower.coincide}")


if __name__ == "__main__":
    main()
