"""Explicit unitary triples with prescribed conjugacy classes and product relation.

Each A_i is U_i D_i U_i^* with D_i the prescribed diagonal and U_i = exp(H_i) for a
skew-Hermitian H_i, so the class constraint holds by construction and only the
product relation is a residual.  U_1 is fixed to the identity because overall
conjugation is a symmetry.  The residual is minimised by Levenberg-Marquardt from
seeded random starts.

Everything here is floating point; callers only read reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from .errors import DimensionMismatch
from .flatmoduli import CentralExtensionData, census_lift, closed_form_k, isotropy_eigenvalues
from .picard import DyckSignature

TOL = 1e-10
STALL = 1e-3


@dataclass(frozen=True)
class ClassSpec:
    """Eigenvalues exp(2 pi i x) per generator, x given as Fractions of a full turn."""

    rank: int
    eigen_turns: tuple[tuple[Fraction, ...], ...]
    central_target: int = 1

    def __post_init__(self):
        for row in self.eigen_turns:
            if len(row) != self.rank:
                raise DimensionMismatch(f"{len(row)} eigenvalues for rank {self.rank}")

    def diagonals(self) -> list[np.ndarray]:
        return [np.exp(2j * np.pi * np.array([float(x) for x in row])) for row in self.eigen_turns]

    def determinant_consistent(self) -> bool:
        total = sum(sum(row) for row in self.eigen_turns) % 1
        target = Fraction(0) if self.central_target == 1 else Fraction(self.rank, 2) % 1
        return total == target

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "eigen_turns": [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.eigen_turns],
            "central_target": self.central_target,
        }


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 32
    max_evaluations: int = 2_000
    tolerance: float = TOL
    seed: int = 0


@dataclass
class UnitaryTuple:
    matrices: tuple[np.ndarray, ...]

    @property
    def rank(self) -> int:
        return self.matrices[0].shape[0]

    def unitarity_defects(self) -> list[float]:
        r = self.rank
        return [float(np.linalg.norm(A @ A.conj().T - np.eye(r))) for A in self.matrices]

    def dump(self) -> list:
        """Row-major (re, im) pairs with 17 significant digits."""
        return [[[format(z.real, ".17g"), format(z.imag, ".17g")] for z in A.ravel()] for A in self.matrices]


@dataclass
class SolveReport:
    spec: ClassSpec
    converged: bool
    tuple: UnitaryTuple | None
    residuals: list[float]
    starts_used: int
    iterations: int
    best_loss: float
    status: str
    spectral_error: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, dump_matrices: bool = False) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "converged": self.converged,
            "status": self.status,
            "residuals": [float(f"{x:.3e}") for x in self.residuals],
            "starts_used": self.starts_used,
            "iterations": self.iterations,
            "best_loss": float(f"{self.best_loss:.3e}"),
            "spectral_error": None if self.spectral_error is None else float(f"{self.spectral_error:.3e}"),
            "notes": self.notes,
        }
        if dump_matrices and self.tuple is not None:
            out["matrices"] = self.tuple.dump()
        return out


def _skew(v: np.ndarray, r: int) -> np.ndarray:
    """Skew-Hermitian matrix from r^2 real parameters."""
    H = np.zeros((r, r), dtype=complex)
    iu = np.triu_indices(r, 1)
    m = len(iu[0])
    H[iu] = v[:m] + 1j * v[m:2 * m]
    H = H - H.conj().T
    H[np.diag_indices(r)] = 1j * v[2 * m:2 * m + r]
    return H


def _build(params: np.ndarray, diags: list[np.ndarray]) -> list[np.ndarray]:
    r = len(diags[0])
    out = [np.diag(diags[0])]
    for i, D in enumerate(diags[1:]):
        U = expm(_skew(params[i * r * r:(i + 1) * r * r], r))
        out.append(U @ np.diag(D) @ U.conj().T)
    return out


def _product(mats) -> np.ndarray:
    P = mats[0]
    for A in mats[1:]:
        P = P @ A
    return P


def spectral_error(mats, diags) -> float:
    """Largest distance between computed and prescribed eigenvalues after matching."""
    worst = 0.0
    for A, D in zip(mats, diags):
        ev = list(np.linalg.eigvals(A))
        for d in sorted(D, key=lambda z: (np.angle(z), abs(z))):
            j = int(np.argmin([abs(e - d) for e in ev]))
            worst = max(worst, abs(ev[j] - d))
            ev.pop(j)
    return float(worst)


def solve_triple(spec: ClassSpec, config: SolverConfig = SolverConfig()) -> SolveReport:
    r = spec.rank
    diags = spec.diagonals()
    target = spec.central_target * np.eye(r)
    nparam = (len(diags) - 1) * r * r

    def resid(x):
        R = _product(_build(x, diags)) - target
        return np.concatenate([R.real.ravel(), R.imag.ravel()])

    if not spec.determinant_consistent():
        return SolveReport(spec, False, None, [], 0, 0, float("inf"), "infeasible-determinant")

    rng = np.random.default_rng(config.seed)
    best = (float("inf"), None)
    iterations = 0
    used = 0
    for _ in range(config.starts):
        used += 1
        x0 = rng.normal(scale=np.pi, size=nparam)
        if nparam:
            sol = least_squares(resid, x0, method="lm", xtol=1e-14, ftol=1e-13, gtol=1e-15,
                                max_nfev=config.max_evaluations)
            x, nfev = sol.x, sol.nfev
        else:
            x, nfev = x0, 1
        iterations += nfev
        loss = float(np.linalg.norm(resid(x)))
        if loss < best[0]:
            best = (loss, x)
        if loss < config.tolerance:
            break
    mats = _build(best[1], diags)
    res = [float(np.linalg.norm(_product(mats) - target))]
    serr = spectral_error(mats, diags)
    converged = res[0] <= config.tolerance and serr <= 1e-8
    if converged:
        status = "converged"
    elif best[0] > STALL:
        status = "infeasible"
    else:
        status = "inconclusive"
    return SolveReport(spec, converged, UnitaryTuple(tuple(mats)) if converged else None, res,
                       used, iterations, best[0], status, serr)


def verify_relations(tup: UnitaryTuple, sig: DyckSignature, ext: CentralExtensionData,
                     central_sign: int) -> list[float]:
    """Frobenius norms of A_i^{e_i} - sign^{b_i} I and A_1...A_n - sign^b I."""
    mats = tup.matrices
    if len(mats) != sig.n:
        raise DimensionMismatch(f"{len(mats)} matrices for signature {sig}")
    r = tup.rank
    if any(A.shape != (r, r) for A in mats):
        raise DimensionMismatch("matrices of different sizes")
    I = np.eye(r)
    out = [float(np.linalg.norm(np.linalg.matrix_power(A, e) - central_sign ** b * I))
           for A, e, b in zip(mats, sig.e, ext.b_i)]
    out.append(float(np.linalg.norm(_product(mats) - central_sign ** ext.b * I)))
    return out


def irreducibility(tup: UnitaryTuple, threshold: float = 1e-8) -> bool:
    """True iff the commutant of the matrices is the scalars."""
    r = tup.rank
    I = np.eye(r)
    # X A = A X  <=>  (A^T kron I - I kron A) vec(X) = 0
    blocks = [np.kron(A.T, I) - np.kron(I, A) for A in tup.matrices]
    s = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    nullity = int(np.sum(s < threshold)) + max(0, r * r - len(s))
    return nullity == 1


# -- census specs --------------------------------------------------------------------------


def census_spec(p: int, k: int) -> tuple[ClassSpec, int]:
    """Class data for the rank-2 entry k (any k of the census parity); returns (spec, sign)."""
    ce, _ = census_lift(p)
    sigma = -1  # forced by g_1^2 = t^{b_1} with b_1 = 1
    l2 = 1 if ce.b_i[1] % 2 else 2
    turns = (
        (Fraction(1, 4), Fraction(-1, 4)),
        (Fraction(l2, 6), Fraction(-l2, 6)),
        (Fraction(k, 2 * p), Fraction(-k, 2 * p)),
    )
    return ClassSpec(2, tuple(tuple(x % 1 for x in row) for row in turns), sigma ** ce.b), sigma


def sym2(A: np.ndarray) -> np.ndarray:
    """Second symmetric power of a 2x2 matrix in the basis x^2, sqrt2 xy, y^2."""
    a, b = A[0]
    c, d = A[1]
    s = np.sqrt(2)
    return np.array([
        [a * a, s * a * b, b * b],
        [s * a * c, a * d + b * c, s * b * d],
        [c * c, s * c * d, d * d],
    ])


def rank3_specs_p7() -> dict[str, ClassSpec]:
    from .flatmoduli import su3_exponents_p7

    out = {}
    for name, row in su3_exponents_p7().items():
        eig = isotropy_eigenvalues(7, row)
        out[name] = ClassSpec(3, tuple(tuple(col) for col in eig), 1)
    return out


def out_of_range_k(p: int) -> list[int]:
    ks = closed_form_k(p)
    parity = ks[0] % 2
    return [k for k in range(1, p) if k % 2 == parity and k not in ks]
