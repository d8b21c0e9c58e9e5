# Arithmetic in Z^r + Z/n1 + ... + Z/nk and the lattice tools behind it.

from blockmonoid import FgGroup, quotient_structure, rank_of, subgroup_from, whole_group

# moduli are put into invariant-factor form on construction
G = FgGroup(1, (6, 4))
print(G)  # Z + Z/2 + Z/12

g = G.element((3, 1, 5))
h = G.element((-1, 1, 9))
print(g + h, g - h, 3 * g)
print("order of the torsion part:", G.element((0, 1, 3)).order())

# subgroups are stored in Hermite normal form, so equal subgroups compare equal
Z2 = FgGroup(2)
S = subgroup_from([Z2.element(v) for v in [(2, 0), (1, 1), (0, 2)]])
T = subgroup_from([Z2.element(v) for v in [(1, 1), (0, 2)]])
print(S.matrix, S == T)
print("(1, 3) in S:", Z2.element((1, 3)) in S)
print("rank:", rank_of(S))

# quotients come from the Smith normal form
q = quotient_structure(whole_group(Z2), S)
print("Z^2 / S =", q.group)
for v in [(0, 0), (1, 0), (0, 1), (3, 4)]:
    print(v, "->", q.project(Z2.element(v)))
