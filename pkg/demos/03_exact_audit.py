# An exact audit
#
# Every pair (P, Q) of two subgroups is pushed through the extractor and the
# output distribution is tallied with rationals, so nothing here is sampled.

from ecx import Curve, PrimeField, exact_distribution, run_audit
from ecx.curve import find_subgroups
from ecx.stat_lab import collision_probability, min_entropy, statistical_distance

E = Curve(PrimeField(31), 4, 2)  # 35 = 5 * 7 points
P5 = find_subgroups(E, 5)[0]
P7 = find_subgroups(E, 7)[0]

d = exact_distribution(P5, P7, "ext1", 2)
print("counts:", dict(sorted(d.counts.items())), " excluded:", d.excluded)
print("delta =", statistical_distance(d, 4))
print("Col   =", collision_probability(d), ">= 1/4")
print("H_inf = %.4f bits" % min_entropy(d))

# The full report bundles these numbers with the lemma checks and the
# (asymptotic, constant-free) bound evaluations.

report = run_audit(E, P5, P7, "ext1", 2, e=1)
print(report.to_text())
