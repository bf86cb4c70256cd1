"""Partial geometries whose collinearity scheme has q_22^2 = 0.

Run: python demos/partial_geometries.py [s_max t_max]
"""

import sys

from scheme_forge.catalog import pg_scan, pg_scheme
from scheme_forge.scheme import krein_parameter


def main(argv):
    s_max, t_max = (int(x) for x in argv) if len(argv) == 2 else (10, 100)
    print(f"{'s':>3} {'t':>4} {'alpha':>5} {'points':>7}  status")
    for e in pg_scan(s_max, t_max):
        print(f"{e.s:>3} {e.t:>4} {e.alpha:>5} {e.points:>7}  {e.status}")
    q = krein_parameter(pg_scheme(2, 2, 1).spectral, 1, 1, 1)
    print(f"\nGQ(2,2) has q_11^1 = {q}, so it is not among them")


if __name__ == "__main__":
    main(sys.argv[1:])
