"""Ladder operators built from the eigenvectors of the adjoint matrix.

A coefficient vector c with M c = lambda c turns into the degree-1 operator
Z = sum_j c_j O_j satisfying [H, Z] = lambda Z, so Z ladders eigenfunctions
of H by lambda.  Construction normalizes each Z so its first nonzero
coefficient (in the x1..xK, p1..pK basis order) equals exactly 1, verifies
the commutation relation, and checks that dagger(Z) lies in the eigenspace
of the paired frequency -conj(lambda).
"""

from dataclasses import dataclass

import numpy as np

from .adjoint import QuadraticHamiltonian
from .errors import (
    DefectiveSpectrumError,
    DimensionMismatchError,
    VerificationError,
)
from .spectral import NaturalFrequency, SpectralResult
from .weyl import ComplexRational, ONE, WeylPolynomial, commutator, dagger

__all__ = [
    "LadderOperator",
    "CommutatorTable",
    "build_ladders",
    "commutator_table",
    "ladder_shift_check",
    "ladders_to_json",
    "LADDER_RESIDUAL_TOL",
]

LADDER_RESIDUAL_TOL = 1e-9
PAIRING_TOL = 1e-8


@dataclass(frozen=True)
class LadderOperator:
    """A degree-1 operator with [H, Z] = lambda Z.

    ``lam_exact`` is set when the whole construction stayed exact, in which
    case the commutation relation was verified with zero residual.
    """

    z: WeylPolynomial
    lam: complex
    lam_exact: ComplexRational | None
    frequency: NaturalFrequency

    def __str__(self):
        return str(self.z)


@dataclass(frozen=True)
class CommutatorTable:
    """All pairwise ladder commutators; entries are exact scalars.

    entries[i][j] is the coefficient of the identity in [Z_i, Z_j].  The
    table is antisymmetric by construction.
    """

    entries: tuple[tuple[ComplexRational, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> ComplexRational:
        i, j = ij
        return self.entries[i][j]


def _normalize_exact(vec: tuple[ComplexRational, ...]) -> list[ComplexRational]:
    lead = next((c for c in vec if c), None)
    if lead is None:
        raise VerificationError("eigenvector is identically zero")
    return [c / lead for c in vec]


def _normalize_float(vec: tuple[complex, ...]) -> list[complex]:
    lead = next((c for c in vec if abs(c) > 1e-10), None)
    if lead is None:
        raise VerificationError("eigenvector is numerically zero")
    return [c / lead for c in vec]


def _span_residual(target: np.ndarray, basis: list[np.ndarray]) -> float:
    """Distance from target to the span of basis, relative to |target|."""
    a = np.stack(basis, axis=1)
    coeff, *_ = np.linalg.lstsq(a, target, rcond=None)
    resid = target - a @ coeff
    return float(np.max(np.abs(resid))) / max(1.0, float(np.max(np.abs(target))))


def build_ladders(ham: QuadraticHamiltonian, spectrum: SpectralResult,
                  residual_tol: float = LADDER_RESIDUAL_TOL) -> list[LadderOperator]:
    """One ladder per eigenvector, ordered by (Re lambda, Im lambda).

    Raises DefectiveSpectrumError when the spectrum is defective (a complete
    ladder set does not exist then).  Exact eigen-data is verified exactly;
    float eigen-data must satisfy the commutation relation with coefficient
    residual below ``residual_tol``.
    """
    if spectrum.defective:
        raise DefectiveSpectrumError(
            "spectrum is defective (an eigenvalue has too few eigenvectors); "
            "ladder operators are not supported for defective spectra")
    num_modes = ham.num_modes
    if len(spectrum.char_poly) - 1 != 2 * num_modes:
        raise DimensionMismatchError(
            "spectral result dimension does not match the Hamiltonian")
    ladders: list[LadderOperator] = []
    for freq in spectrum.frequencies:
        for k in range(freq.geometric_multiplicity):
            exact_vec = freq.eigenvectors_exact[k]
            if freq.lam_exact is not None and exact_vec is not None:
                coeffs = _normalize_exact(exact_vec)
                z = WeylPolynomial.from_linear(coeffs, num_modes)
                residual = commutator(ham.op, z) - freq.lam_exact * z
                if not residual.is_zero:
                    raise VerificationError(
                        f"exact ladder at lambda={freq.lam_exact} fails its "
                        f"commutation relation; residual {residual}")
                ladders.append(LadderOperator(
                    z=z, lam=freq.lam, lam_exact=freq.lam_exact, frequency=freq))
            else:
                fvec = _normalize_float(freq.eigenvectors[k])
                coeffs = [ComplexRational.from_complex(c) for c in fvec]
                z = WeylPolynomial.from_linear(coeffs, num_modes)
                lam_cr = ComplexRational.from_complex(freq.lam)
                residual = commutator(ham.op, z) - lam_cr * z
                worst = max(
                    (abs(complex(c)) for c in residual.terms.values()), default=0.0)
                if worst >= residual_tol:
                    raise VerificationError(
                        f"ladder at lambda={freq.lam} fails its commutation "
                        f"relation with residual {worst:.3e}",
                        (worst,),
                    )
                ladders.append(LadderOperator(
                    z=z, lam=freq.lam, lam_exact=None, frequency=freq))

    _check_dagger_pairing(ladders)
    return ladders


def _check_dagger_pairing(ladders: list[LadderOperator]) -> None:
    """dagger(Z) at frequency lambda must lie in the eigenspace at -conj(lambda)."""
    if not ladders:
        return
    num_modes = ladders[0].z.num_modes
    for lad in ladders:
        target = -lad.lam.conjugate()
        partners = [o for o in ladders if abs(o.lam - target) < PAIRING_TOL]
        if not partners:
            raise VerificationError(
                f"no partner frequency found for lambda={lad.lam}")
        dz = dagger(lad.z)
        dvec = np.array(
            [complex(c) for c in dz.linear_coefficients()], dtype=np.complex128)
        basis = [
            np.array([complex(c) for c in o.z.linear_coefficients()],
                     dtype=np.complex128)
            for o in partners
        ]
        resid = _span_residual(dvec, basis)
        if resid >= LADDER_RESIDUAL_TOL:
            raise VerificationError(
                f"dagger of ladder at lambda={lad.lam} is not in the paired "
                f"eigenspace (residual {resid:.3e})",
                (resid,),
            )


def commutator_table(ladders: list[LadderOperator]) -> CommutatorTable:
    """Exact pairwise commutators; each must be a scalar.

    Degree-1 operators always commute to scalars, so a higher-degree entry
    indicates an internal error and trips an assertion.
    """
    entries: list[tuple[ComplexRational, ...]] = []
    for a in ladders:
        row = []
        for b in ladders:
            scalar = commutator(a.z, b.z).as_scalar()
            assert scalar is not None, "commutator of degree-1 operators must be scalar"
            row.append(scalar)
        entries.append(tuple(row))
    return CommutatorTable(entries=tuple(entries))


def ladder_shift_check(ham: QuadraticHamiltonian,
                       ladder: LadderOperator) -> ComplexRational | complex:
    """Recompute [H, Z] and return the proportionality scalar.

    Exact ladders give an exact scalar equal to lam_exact; float ladders get
    a coefficientwise comparison at the construction residual tolerance.
    Raises VerificationError when [H, Z] is not proportional to Z.
    """
    z = ladder.z
    if z.is_zero:
        raise VerificationError("ladder operator is zero")
    comm = commutator(ham.op, z)
    if ladder.lam_exact is not None:
        ratio = _exact_ratio(comm, z)
        if ratio is None:
            raise VerificationError(
                f"[H, Z] is not exactly proportional to Z for lambda={ladder.lam_exact}")
        return ratio
    zc = {m: complex(c) for m, c in z.terms.items()}
    lead = max(zc, key=lambda m: abs(zc[m]))
    lam = complex(comm.coefficient(lead)) / zc[lead]
    worst = 0.0
    for mono in set(zc) | set(comm.terms):
        got = complex(comm.coefficient(mono))
        want = lam * zc.get(mono, 0.0)
        worst = max(worst, abs(got - want))
    if worst >= LADDER_RESIDUAL_TOL:
        raise VerificationError(
            f"[H, Z] deviates from lambda*Z by {worst:.3e}", (worst,))
    return lam


def _exact_ratio(num: WeylPolynomial, den: WeylPolynomial) -> ComplexRational | None:
    """The scalar r with num == r*den, or None when no such scalar exists."""
    if den.is_zero:
        return None
    if num.is_zero:
        return ComplexRational(0)
    lead = max(den.terms, key=lambda m: m.sort_key)
    top = num.coefficient(lead)
    if not top:
        return None
    ratio = top / den.coefficient(lead)
    return ratio if num == ratio * den else None


def ladders_to_json(ladders: list[LadderOperator],
                    table: CommutatorTable | None = None) -> dict:
    """Schema: per-ladder float/exact lambda, coefficient vectors over the
    flat basis, canonical text; plus the exact commutator table."""
    doc: dict = {
        "ladders": [
            {
                "lambda": [lad.lam.real, lad.lam.imag],
                "lambda_exact": (
                    list(lad.lam_exact.as_quad())
                    if lad.lam_exact is not None else None),
                "coefficients": [
                    [complex(c).real, complex(c).imag]
                    for c in lad.z.linear_coefficients()
                ],
                "coefficients_exact": [
                    list(c.as_quad()) for c in lad.z.linear_coefficients()
                ],
                "text": str(lad.z),
            }
            for lad in ladders
        ],
    }
    if table is not None:
        doc["commutator_table"] = [
            [list(v.as_quad()) for v in row] for row in table.entries
        ]
    return doc
