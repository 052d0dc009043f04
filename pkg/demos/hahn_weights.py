"""Existence of C_t on weighted Hahn spaces.

For each weight the script prints the verdict of the existence test, the
certificate from the nonexistence test, and the first few column
coordinates E_m.
"""
from fractions import Fraction

from ceslab import hahn
from ceslab.spaces import Weight

CASES = [(Weight.log(), 1), (Weight.power(1), 1), (Weight.geometric(2), Fraction(2, 5)),
         (Weight.geometric(2), Fraction(3, 5)), (Weight.factorial(), Fraction(1, 2))]


def main():
    for weight, t in CASES:
        rep = hahn.existence_test(weight, t, 16, 2 ** 14)
        no = hahn.nonexistence_test(weight, t)
        line = f"{weight.label:>14}  t = {t}: exists {rep.verdict.status.value}, fails {no.status.value}"
        if rep.coordinates:
            line += "; E_0..E_3 <= " + ", ".join(f"{float(c.upper):.4f}" for c in rep.coordinates[:4])
        print(line)


if __name__ == "__main__":
    main()
