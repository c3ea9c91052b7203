"""Sweep the damping ratio and watch the spectrum deform.

The natural frequencies are +-1 +- i*b/2: real parts stay put while the
imaginary parts grow linearly with b.  At b = 0 the frequencies collide in
pairs; the spectrum is degenerate but still complete, so ladders exist
everywhere along the sweep.  The same data is available from the command
line via:  quadladder --sweep b=0..2:1/2

Run:  python3 demos/parameter_sweep.py
"""

from fractions import Fraction

from quadladder import (
    adjoint_matrix,
    build_hd,
    build_ladders,
    eigen_decompose,
)

print(f"{'b':>5}  frequencies (exact)")
b = Fraction(0)
while b <= 2:
    spectrum = eigen_decompose(adjoint_matrix(build_hd(b)))
    lams = []
    for f in spectrum.frequencies:
        lams.extend([str(f.lam_exact)] * f.algebraic_multiplicity)
    print(f"{str(b):>5}  {', '.join(lams)}")
    b += Fraction(1, 2)
print()

print("Ladder count along the sweep (two per frequency at the degenerate point):")
b = Fraction(0)
while b <= 2:
    ham = build_hd(b)
    ladders = build_ladders(ham, eigen_decompose(adjoint_matrix(ham)))
    negative = sum(1 for lad in ladders if lad.lam.real < 0)
    print(f"  b = {str(b):>3}: {len(ladders)} ladders "
          f"({negative} lowering, {len(ladders) - negative} raising)")
    b += Fraction(1, 2)
