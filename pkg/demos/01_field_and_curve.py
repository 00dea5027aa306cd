# Fields and curves
#
# A walk through the arithmetic layer: a prime field, a quadratic extension,
# and the chord-tangent group law on a small curve.

from ecx import Curve, ExtField, PrimeField, enumerate_points, trace
from ecx.curve import find_subgroups, group_order, subgroup_orders
from ecx.finite_field import sqrt

# ## Prime field F_11

F = PrimeField(11)
x = F(7)
print("7^-1 in F_11 =", x.inverse().value)
print("sqrt(5) in F_11 =", [r.value for r in sqrt(F(5))])

# ## The extension F_{7^2} = F_7[x]/(x^2 + 1)
#
# Elements are coefficient tuples, lowest degree first.

K = ExtField(7, (1, 0, 1))
z = K((3, 5))
print("(3 + 5x)^-1 =", z.inverse().coeffs)
print("Tr(3 + 5x) =", trace(z).value)  # a + a^7 = 2 * 3

# ## y^2 = x^3 + x + 6 over F_11
#
# Thirteen points, a prime, so every non-identity point generates the group.

E = Curve(F, 1, 6)
pts = enumerate_points(E)
print("#E(F_11) =", len(pts), " Hasse interval:", E.hasse_interval())
P = E.point(2, 7)
print("2P =", (2 * P).to_json(), " 13P =", (13 * P).to_json())

# ## The same equation over F_{7^2}
#
# 55 = 5 * 11 points, so there are subgroups of order 5 and 11.

E49 = Curve(K, K(1), K(6))
print("#E(F_49) =", group_order(E49))
print("subgroup orders:", subgroup_orders(E49))
for s in find_subgroups(E49, 5):
    print("order-5 generator:", s.generator.to_json())
