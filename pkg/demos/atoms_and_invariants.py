# Minimal zero-sum sequences and the factorization invariants built on them.

from blockmonoid import (
    FgGroup,
    GroundSet,
    atoms_of,
    catenary_bounded,
    davenport,
    delta_bounded,
    factorizations,
    length_set,
)

C3 = FgGroup(0, (3,))
G0 = GroundSet.of(C3, [1, 2])
A = atoms_of(G0)
for a in A:
    print("atom", a)
print("largest atom:", davenport(G0))

# 1^3 2^3 factors as (1^3)(2^3) or as (1 2)^3
B = G0.sequence((3, 3))
for z in factorizations(B, A):
    print(" * ".join(str(a) for a, c in zip(A, z.counts) for _ in range(c)), "length", z.length)
print("lengths:", length_set(B, A))

# monoid-wide values are only ever lower bounds taken over |B| <= bound
for bound in (2, 4, 6):
    print(bound, "catenary >=", catenary_bounded(G0, bound), "distances", delta_bounded(G0, bound))

# a set in Z: atoms now have unbounded-looking shapes
G1 = GroundSet.of(FgGroup(1), [3, 5, -4, -7])
print([a.mult for a in atoms_of(G1)])
