"""Operator norm enclosures of C_t across the catalogued spaces.

Run with ``python3 demos/norms_tour.py``.  Each line shows the certified
lower and upper bounds on a 4096 section and the method that produced them.
"""
import math

from ceslab.spaces import Space, Weight
from ceslab.spectral import ExistenceError, operator_norm

SPACES = [Space.lp(1), Space.lp(2), Space.lp(math.inf), Space.cs(), Space.ces(2), Space.bv(), Space.bv0(),
          Space.bvp(2), Space.hahn(Weight.log())]


def main():
    for t in (0.0, 0.5, 1.0):
        print(f"t = {t}")
        for space in SPACES:
            try:
                e = operator_norm(space, t, 4096)
            except ExistenceError as exc:
                print(f"  {space.name:>12}  {exc}")
                continue
            print(f"  {space.name:>12}  [{float(e.lower):.10f}, {float(e.upper):.10f}]  {e.method.value}")
    # on l1 the enclosure brackets log(1/(1-t))/t
    print("closed form at t = 1/2 on l1:", 2 * math.log(2))


if __name__ == "__main__":
    main()
