"""Four subsets of J(8,4) and what the vanishing Krein parameters say about them.

Run: python demos/johnson_designs.py
"""

from scheme_forge.catalog import johnson
from scheme_forge.designs import constrain_design, eigenspace_support, inner_distribution, j84_examples, mac_williams
from scheme_forge.scheme import vanishing_krein


def main():
    J = johnson(8, 4)
    sp = J.spectral
    print(f"J(8,4): n = {sp.n}, valencies {[str(x) for x in sp.k]}, multiplicities {[str(x) for x in sp.m]}")
    print("vanishing q_ij^1:", [v for v in vanishing_krein(J.krein) if v[2] == 1])

    for key, des in j84_examples(J).items():
        a = inner_distribution(des)
        cert = mac_williams(a, sp)
        print(f"\n{des.name}")
        print(f"  size {des.size}, inner distribution {[str(x) for x in a]}")
        print(f"  aQ = {[str(x) for x in cert.aQ]}")
        print(f"  support from aQ {cert.support}, from projections {eigenspace_support(des)}")

    rep = constrain_design(sp, J.krein, {1, 4})
    print("\nsupport {1,4}:")
    for step in rep.steps:
        print(f"  drop V{step.h}: {step.dichotomy}")
    print(f"  verdict: {rep.verdict}")


if __name__ == "__main__":
    main()
