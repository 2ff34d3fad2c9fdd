"""Localizing at m = e1 inverts x; the chain J_0 <= J_1 <= ... settles on <s2 + 1>.

Stabilization is detected after W equal steps, so the result is always
marked heuristic.

    python demos/localized_chain.py
"""

from logbs.bsideal import bs_ideal_localized
from logbs.frontend import parse_poly
from logbs.support import structural_check


def main():
    V = ("x", "y")
    F = [parse_poly("x", V), parse_poly("y", V)]
    res = bs_ideal_localized(F, [(1, 1)], (1, 0), W=3)
    print("F = (x, y), K = <(1, 1)>, m = (1, 0)")
    for step in res.chain:
        gens = ", ".join(map(str, step.generators)) or "0"
        print(f"  J_{step.k} = <{gens}>   contains J_{max(step.k - 1, 0)}: {step.contains_previous}")
    print(f"  stable from k* = {res.k_star} (window {res.window})")
    print(f"  result <{', '.join(map(str, res.generators))}>, flags {res.flags}")
    for cert in res.certificates:
        print(f"  {cert.identity()}")
    report = structural_check(res)
    print(f"  localize-independence: {report['localize-independence'].status}")

    print()
    print("F = (x), K = <1>, m = (1): inverting x kills the quotient")
    unit = bs_ideal_localized([parse_poly("x", ("x",))], [(1,)], (1,))
    print(f"  result <{', '.join(map(str, unit.generators))}>, flags {unit.flags}")


if __name__ == "__main__":
    main()
