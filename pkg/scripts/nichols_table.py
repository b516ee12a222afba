"""Coproduct coefficients of x^n in the braided line, with the quotient test at roots of unity.

    python scripts/nichols_table.py [--max-n 6] [--q 2]
"""

import argparse

from braidhopf.gradedengine import (as_graded, braided_line, capped_integral_search,
                                    gaussian_binomial, root_of_unity, truncated_nichols)
from braidhopf.scalars import Field, format_scalar, parse_scalar


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--q", default="2", help="rational q for the coefficient table")
    args = ap.parse_args()

    q = parse_scalar(Field.rational(), args.q)
    H = braided_line(q, args.max_n)
    print(f"Delta(x^n) coefficients at q = {format_scalar(q)}")
    for n in range(args.max_n + 1):
        row = [format_scalar(H.coproduct_coefficient(n, i)) for i in range(n + 1)]
        print(f"  n={n}: " + " ".join(row))

    print("\nprimitive n-th root of unity: middle binomials and the integral of k[x]/(x^n)")
    for n in range(2, args.max_n + 1):
        z = root_of_unity(n)
        middle = {format_scalar(gaussian_binomial(z, n, i)) for i in range(1, n)}
        G = as_graded(truncated_nichols(n), n)
        ints = capped_integral_search(G)
        top = [G.labels[k] for k in ints.col(0)] if ints.cols else []
        eps = format_scalar((G.eps @ ints)[0, 0]) if ints.cols else "-"
        print(f"  n={n}: middle binomials {sorted(middle)}, integral {top}, eps {eps}")


if __name__ == "__main__":
    main()
