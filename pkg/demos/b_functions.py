"""b-functions of a few plane curves, each checked against its functional equation.

    python demos/b_functions.py
"""

from logbs.bsideal import bs_ideal
from logbs.frontend import parse_poly
from logbs.support import factor_linear


CURVES = [
    ("x^3", ("x",)),
    ("x*y", ("x", "y")),
    ("x^2 + y^2", ("x", "y")),
    ("y^2 - x^3", ("x", "y")),
]


def roots(b):
    factors, _ = factor_linear(b)
    return sorted(-L.constant for L, k in factors for _ in range(k))


def main():
    for text, vars in CURVES:
        f = parse_poly(text, vars)
        res = bs_ideal([f], [(1,)])
        b = res.generators[0]
        print(f"f = {text}")
        print(f"  b(s)  = {b}")
        print(f"  roots = {', '.join(map(str, roots(b)))}")
        for cert in res.certificates:
            status = "verified" if cert.verified else "NOT verified"
            print(f"  {cert.identity()}  [{status}]")
        print()


if __name__ == "__main__":
    main()
