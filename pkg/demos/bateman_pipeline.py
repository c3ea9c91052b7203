"""Walk the full pipeline for the damped/amplified oscillator pair.

The model couples a damped oscillator (x) to its time-reversed mirror (y) so
that the pair conserves energy.  One dimensionless ratio b survives scaling;
this script builds the Hamiltonian at b = 1, derives the matrix it induces
on the linear operator basis (x, y, px, py), and reads off the natural
frequencies and ladder operators, all in exact arithmetic.

Run:  python3 demos/bateman_pipeline.py
"""

from fractions import Fraction

from quadladder import (
    adjoint_matrix,
    build_hd,
    build_ladders,
    commutator,
    commutator_table,
    eigen_decompose,
)

b = Fraction(1)
ham = build_hd(b)
print(f"Hamiltonian at b = {b}:")
print(f"  H = {ham.op}")
print()

matrix = adjoint_matrix(ham)
print("Matrix of O -> [H, O] on the basis (x, y, px, py), columns = images:")
for row in matrix.exact:
    print("  [", ", ".join(str(v) for v in row), "]")
print()

spectrum = eigen_decompose(matrix)
print("Natural frequencies (exact, with multiplicities):")
for f in spectrum.frequencies:
    print(f"  lambda = {f.lam_exact}   alg {f.algebraic_multiplicity}, "
          f"geo {f.geometric_multiplicity}")
print()

ladders = build_ladders(ham, spectrum)
print("Ladder operators, each satisfying [H, Z] = lambda Z exactly:")
for k, lad in enumerate(ladders, start=1):
    check = commutator(ham.op, lad.z) == lad.lam_exact * lad.z
    print(f"  Z{k} = {lad.z}    (lambda = {lad.lam_exact}, verified: {check})")
print()

table = commutator_table(ladders)
print("Pairwise commutators [Zi, Zj] (all scalars):")
for i in range(table.size):
    print("  [", ", ".join(str(table[i, j]) for j in range(table.size)), "]")
