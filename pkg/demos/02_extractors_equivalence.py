# Extractors and the doubling identity
#
# ext1 adds two points and keeps the low k bits of the abscissa.  Feeding it
# the same point twice is the classical single-source extractor applied to 2P.

from ecx import Curve, ExtField, PrimeField, subgroup_from_generator
from ecx import D_k, L_k, ext1, ext2
from ecx.curve import find_subgroups
from ecx.errors import AbscissaUndefined

E = Curve(PrimeField(11), 1, 6)
G = subgroup_from_generator(E.point(2, 7))

P = E.point(2, 7)
print("ext1(P, P, 2) =", ext1(P, P, 2).to_json())
print("ext1(P, O, 1) =", ext1(P, E.infinity, 1).bits)
try:
    ext1(P, -P, 1)
except AbscissaUndefined as exc:
    print("ext1(P, -P, 1):", exc)

# Check ext1(P, P, k) == L_k(2P) over the whole subgroup

agree = sum(
    ext1(Q, Q, k) == L_k(2 * Q, k)
    for Q in G.elements
    if not Q.is_infinity
    for k in (1, 2, 3)
)
print("ext1/L_k agreements:", agree, "of", 3 * (G.order - 1))

# ## Over F_{7^2}
#
# ext2 keeps the first k coefficients of the abscissa instead of bits.

K = ExtField(7, (1, 0, 1))
E49 = Curve(K, K(1), K(6))
S = find_subgroups(E49, 11)[0]
agree = sum(ext2(Q, Q, 1) == D_k(2 * Q, 1) for Q in S.elements if not Q.is_infinity)
print("ext2/D_1 agreements:", agree, "of", S.order - 1)
