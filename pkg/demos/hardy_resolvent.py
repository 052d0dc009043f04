"""Finite sections of the classical average C_1 on l2.

Prints the norm lower bounds as the section grows, then the resolvent norm
at three points.  Inside the disk |z - 1| < 1 the sections blow up; at
z = 2.5 the true resolvent norm is 1/dist(z, disk) = 2, and the sections
approach it from below only slowly (roughly like 1/log N).
"""
from ceslab.spaces import Space
from ceslab.spectral import operator_norm, resolvent_probe


def main():
    for k in range(10, 19, 2):
        e = operator_norm(Space.lp(2), 1, 2 ** k)
        print(f"N = 2^{k:<2}  ||C_1|| >= {float(e.lower):.6f}")
    for z in (2.5, 1 + 0.5j, 0.6):
        vals = [resolvent_probe(z, 1, 2 ** k) for k in (10, 12, 14)]
        print(f"z = {z}:", "  ".join(f"{v:.4f}" for v in vals))


if __name__ == "__main__":
    main()
