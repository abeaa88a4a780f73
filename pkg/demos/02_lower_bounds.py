"""Lower bounds for h-vectors of centrally symmetric polytopes.

For a centrally symmetric n-polytope the difference h - (1+x)^n has
nonnegative even coefficients and is palindromic and unimodal; it
vanishes exactly for affine images of the cross-polytope.  This script
sweeps the built-in corpus and prints the difference polynomials.
"""

from polyfan.corpus import cs_corpus
from polyfan.hvector import check_cs_bounds
from polyfan.polynomials import binomial_poly

print("cross-polytopes realize the minimum (1+x)^n:")
for name, p in cs_corpus()[:5]:
    report = check_cs_bounds(p)
    assert report.h == binomial_poly(p.ambient_dim)
    print(f"  {name}: h = {list(report.h)}")

print("\nfull corpus sweep:")
header = f"{'name':28} {'dim':>3} {'h':>24} {'h - (1+x)^n':>20}"
print(header)
print("-" * len(header))
minima = []
for name, p in cs_corpus():
    report = check_cs_bounds(p)
    assert report.all_bounds_hold(), name
    diff = list(report.difference) + [0] * (p.ambient_dim + 1 - len(report.difference))
    print(f"{name:28} {p.ambient_dim:>3} {str(list(report.h)):>24} {str(diff):>20}")
    if report.is_minimum:
        minima.append(name)
        assert report.is_cross_polytope

print("\nminimizers (all affine cross-polytopes):", ", ".join(minima))
