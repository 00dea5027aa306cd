# Character sums
#
# For an additive subgroup V of F_{7^2} the characters either vanish on V or
# are constant on it, so the sum over all characters of |sum_V psi| is p^n.

from ecx import Curve, ExtField, PrimeField, subgroup_from_generator
from ecx.stat_lab import additive_span, all_bilinear_sums, subgroup_char_sum

K = ExtField(7, (1, 0, 1))
for name, gens in [("{0}", []), ("F_7", [K.one]), ("F_49", [K.one, K((0, 1))])]:
    V = additive_span(K, gens)
    res = subgroup_char_sum(K, V)
    print(f"V = {name:5} |V| = {res.size:2}  sum = {res.value:.6f}  bound = {res.bound}")

# ## Bilinear sums over a curve subgroup
#
# |V| never exceeds r t trivially.  The ratio to sqrt(q r t) is an empirical
# look at the hidden constant.

E = Curve(PrimeField(11), 1, 6)
G = subgroup_from_generator(E.point(2, 7))
for s in all_bilinear_sums(G, G):
    print(f"alpha = {s.alpha.value:2}  |V| = {s.magnitude:7.3f}  ratio = {s.ratio:.3f}")
