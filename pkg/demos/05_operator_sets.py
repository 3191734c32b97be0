"""Is every evolution operator a rescaling of A?

The set of operators written in the reference basis is always contained in
{A Diag(lam)}.  It is trivial when only nonzero lam occur, which holds
under Property (2LI); proportional columns produce a zero lam_j.
Run: python demos/05_operator_sets.py
"""

from evokit import EvolutionAlgebra, Field
from evokit.opset import classify_operator_set, nontrivial_witness

Q = Field.rational()
K2 = Field.tower(2)

cases = {
    "identity": EvolutionAlgebra.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Q),
    "proportional": EvolutionAlgebra.from_rows([[1, 1], [2, 2]], Q),
    "degenerate": EvolutionAlgebra.from_rows([[1, 0], [2, 0]], Q),
    "needs sqrt 2 (Q)": EvolutionAlgebra.from_rows([[2, 1], [2, 1]], Q),
    "needs sqrt 2 (K2)": EvolutionAlgebra.from_rows([[2, 1], [2, 1]], K2),
}
for name, E in cases.items():
    c = classify_operator_set(E, search_budget=40, seed=0)
    print(f"{name:18s} {c.verdict:22s} {c.reason}")

# %% The explicit witness: columns 2 = 4 * column 1, so beta = 2.
w = nontrivial_witness(EvolutionAlgebra.from_rows([[1, 4], [1, 4]], Q), 1, 0)
print("G =", w.G.to_strings(), " operator =", w.operator.to_strings(), " lam =", [str(x) for x in w.lam])
