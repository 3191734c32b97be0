"""Randomised falsification of the theorems the package relies on.

Each instance draws an algebra and several natural-basis changes, then
checks products, the endomorphism criterion, the support condition, rank
invariance, semitriviality, and more.  Any failure is a counterexample.
Run: python demos/06_fuzzing.py
"""

from evokit.randgen import GenParams, fuzz_properties

report = fuzz_properties(GenParams(seed=1, degeneracy_rate=0.2, proportional_pair_rate=0.3), 40)
print(f"{report.passed}/{report.count} passed")
for tag, n in report.checks.items():
    print(f"  {tag:24s} {n}")
