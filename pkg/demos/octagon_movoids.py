"""Line cliques of generalised octagons of order (s, t) and the m-ovoid question.

Run: python demos/octagon_movoids.py
"""

from scheme_forge.catalog import octagon_scheme
from scheme_forge.designs import line_clique_analysis


def main():
    for s, t in [(2, 4), (3, 9), (2, 5), (2, 6)]:
        o = octagon_scheme(s, t)
        flags = o.spectral.flags
        print(f"order ({s},{t}): n = {o.n}, multiplicities {[str(m) for m in o.spectral.m]}")
        if flags.get("NonIntegralMultiplicity"):
            print("  multiplicities are not integers, so no such octagon exists")
            continue
        rep = line_clique_analysis("octagon", s, t)
        print(f"  line clique aQ {[str(x) for x in rep.certificate.aQ]}, q_22^2 = {o.krein[2, 2, 2]}")
        print(f"  {rep.conclusion}")


if __name__ == "__main__":
    main()
