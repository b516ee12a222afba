"""Search for integrals of the braided line under increasing caps.

    python scripts/braided_line_integrals.py [--q 2] [--max-cap 20]
"""

import argparse

from braidhopf.gradedengine import (braided_line, capped_dual_integrals, capped_integral_search,
                                    graded_dual, stable_rational_part)
from braidhopf.scalars import Field, parse_scalar


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="2")
    ap.add_argument("--max-cap", type=int, default=20)
    ap.add_argument("--dual-cap", type=int, default=8, help="largest cap for the dual searches")
    args = ap.parse_args()
    q = parse_scalar(Field.rational(), args.q)

    print(f"{'cap':>4} {'int in H':>9} {'int on H':>9} {'stable rational':>16}")
    for cap in range(1, args.max_cap + 1):
        H = braided_line(q, cap)
        line = f"{cap:>4} {capped_integral_search(H).cols:>9}"
        if cap <= args.dual_cap:
            dual = capped_dual_integrals(graded_dual(H)).cols
            stable = stable_rational_part(q, cap).cols
            line += f" {dual:>9} {stable:>16}"
        print(line)


if __name__ == "__main__":
    main()
