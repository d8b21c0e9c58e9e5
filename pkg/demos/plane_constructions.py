# Two constructions in Z^2: a split ground set and a quotient by a negative line.

import random

from blockmonoid import (
    FgGroup,
    box_region,
    line_quotient_transfer,
    parabola_region,
    random_split_instance,
    split_is_inner_product,
)

Z2 = FgGroup(2)
G1 = [Z2.element(v) for v in [(1, 2), (-1, -2)]]
G2 = [Z2.element(v) for v in [(1, -1), (-2, 2)]]
rep = split_is_inner_product(G1, G2)
print("no mixed atoms:", rep.holds, "slopes", rep.slopes, "atoms", rep.atoms)

rng = random.Random(3)
for _ in range(3):
    a, b = random_split_instance(rng)
    print([g.coords for g in a], [g.coords for g in b], split_is_inner_product(a, b).holds)

# points on or above the parabola n = m^2, with a = (-1, -2)
t = line_quotient_transfer(parabola_region(30), (-1, -2), truncation=30)
print(t.gamma, "via", t.functional, "images", sorted(t.images)[:4], "...", sorted(t.images)[-3:])

# the whole quadrant with a = (-1, -1)
t = line_quotient_transfer(box_region(8), (-1, -1), truncation=8)
print(t.gamma, sorted(t.images), t.condensed)
