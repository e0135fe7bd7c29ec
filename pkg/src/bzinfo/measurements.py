"""Construction and verification of complete complementary measurement families.

Two explicit constructions are provided, both driven by an orthonormal
traceless Hermitian operator basis and a sharpness parameter t bounded by
positivity of the effects:

* mutually unbiased measurements (MUMs): d + 1 POVMs of d effects
  P_n^(b) = I/d + t F_n^(b), built from the grid columns via
  F_n^(b) = F^(b) - (d + sqrt(d)) F_{n,b} for n < d and
  F_d^(b) = (1 + sqrt(d)) F^(b), where F^(b) sums column b.  The sharpness
  index is kappa = 1/d + t^2 (1 + sqrt(d))^2 (d - 1), with kappa = 1
  exactly for rank-one projectors (mutually unbiased bases).

* general SIC measurements: d^2 effects P_a = I/d^2 + t [F - d(d+1) F_a]
  plus P_{d^2} = I/d^2 + t (d+1) F with F the sum of all basis operators.
  The purity parameter is a = 1/d^3 + t^2 (d - 1)(d + 1)^3, with
  a = 1/d^2 exactly in the rank-one (SIC-POVM) case.

Rank-one families are available directly: quadratic-phase mutually
unbiased bases for prime dimensions, and the qubit tetrahedron SIC-POVM.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import MumGrid, OperatorBasis, gell_mann_basis, grid_partition
from .errors import DomainError, NumericalError, PositivityError

PSD_FLOOR = -1e-10
DEGENERACY_EPS = 1e-12
DEFAULT_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Povm:
    """One measurement: positive semidefinite effects summing to the identity."""

    dim: int
    effects: np.ndarray  # (n_outcomes, d, d) complex


@dataclass(frozen=True, eq=False)
class MumSet:
    """A complete family of d + 1 mutually unbiased measurements."""

    dim: int
    t: float
    kappa: float
    povms: tuple[Povm, ...]
    kind: str = "mum"  # "mum" or "mub"

    def effect_groups(self) -> list[np.ndarray]:
        return [p.effects for p in self.povms]


@dataclass(frozen=True, eq=False)
class GsmSet:
    """A complete general SIC measurement of d^2 effects."""

    dim: int
    t: float
    a: float
    effects: np.ndarray  # (d*d, d, d) complex
    kind: str = "gsm"  # "gsm" or "sic"

    def effect_groups(self) -> list[np.ndarray]:
        return [self.effects]


@dataclass
class VerificationReport:
    """Per-condition maximum absolute deviations for a measurement family.

    ``passed`` requires every deviation below ``tol`` and a non-degenerate
    sharpness parameter (kappa > 1/d, a > 1/d^3, strictly).
    """

    kind: str
    tol: float
    deviations: dict[str, float]
    degenerate: bool
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        self.passed = not self.degenerate and all(
            v < self.tol for v in self.deviations.values()
        )

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def failures(self) -> list[str]:
        out = [name for name, v in self.deviations.items() if v >= self.tol]
        if self.degenerate:
            out.append("degenerate")
        return out

    def summary(self) -> str:
        lines = [f"{self.kind} verification: {'pass' if self.passed else 'FAIL'} (tol {self.tol:g})"]
        for name, v in sorted(self.deviations.items()):
            mark = "ok" if v < self.tol else "FAIL"
            lines.append(f"  {name:<24} {v:.3e}  {mark}")
        if self.degenerate:
            lines.append("  degenerate sharpness parameter  FAIL")
        return "\n".join(lines)


def mum_kappa(d: int, t: float) -> float:
    """Sharpness index of the MUM construction at parameter t."""
    return 1.0 / d + t * t * (1.0 + np.sqrt(d)) ** 2 * (d - 1)


def gsm_a(d: int, t: float) -> float:
    """Purity parameter of the general SIC construction at parameter t."""
    return 1.0 / d**3 + t * t * (d - 1) * (d + 1) ** 3


def mum_operators(grid: MumGrid) -> np.ndarray:
    """The d(d+1) traceless generators F_n^(b), shape (d+1, d, d, d)."""
    d = grid.dim
    col_sums = grid.grid.sum(axis=1)  # F^(b), shape (d+1, d, d)
    ops = np.empty((d + 1, d, d, d), dtype=np.complex128)
    ops[:, : d - 1] = col_sums[:, None, :, :] - (d + np.sqrt(d)) * grid.grid
    ops[:, d - 1] = (1.0 + np.sqrt(d)) * col_sums
    return ops


def gsm_operators(basis: OperatorBasis) -> np.ndarray:
    """The d^2 traceless generators of the general SIC construction."""
    d = basis.dim
    total = basis.ops.sum(axis=0)  # F
    ops = np.empty((d * d, d, d), dtype=np.complex128)
    ops[:-1] = total[None, :, :] - d * (d + 1) * basis.ops
    ops[-1] = (d + 1) * total
    return ops


def _max_t(ops: np.ndarray, identity_weight: float) -> float:
    """Largest t keeping every I*identity_weight + t*op positive semidefinite.

    Positivity is linear in t per eigenvalue: the effect stays PSD iff
    identity_weight + t*lam >= 0 for every eigenvalue lam, so each negative
    eigenvalue contributes the bound t <= -identity_weight/lam.
    """
    bound = np.inf
    for op in ops.reshape(-1, ops.shape[-1], ops.shape[-1]):
        lams = np.linalg.eigvalsh(op)
        neg = lams[lams < 0.0]
        if neg.size:
            bound = min(bound, float((-identity_weight / neg).min()))
    if not np.isfinite(bound):
        raise NumericalError("no generator bounds t; traceless nonzero operators must")
    return bound


def max_t_mum(grid: MumGrid) -> float:
    """Largest sharpness parameter with all MUM effects positive semidefinite."""
    return _max_t(mum_operators(grid), 1.0 / grid.dim)


def max_t_gsm(basis: OperatorBasis) -> float:
    """Largest sharpness parameter with all general SIC effects positive semidefinite."""
    d = basis.dim
    return _max_t(gsm_operators(basis), 1.0 / d**2)


def _resolve_t(t, t_max: float) -> float:
    if isinstance(t, str):
        if t != "auto":
            raise DomainError(f"t must be a number or 'auto', got {t!r}")
        return t_max
    t = float(t)
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    return t


def _check_psd(effects: np.ndarray, label_of) -> None:
    for i, effect in enumerate(effects):
        smallest = float(np.linalg.eigvalsh(effect)[0])
        if smallest < PSD_FLOOR:
            raise PositivityError(
                f"effect {label_of(i)} has eigenvalue {smallest:.3e}; "
                "t exceeds the positivity bound"
            )


def build_mum(d: int, t="auto", grid: MumGrid | None = None) -> MumSet:
    """Build the complete set of d + 1 MUMs at sharpness t.

    t = "auto" resolves to the positivity bound max_t_mum.  Effects are
    checked positive semidefinite; a violating (b, n) is named on failure.
    """
    if d < 2:
        raise DomainError(f"MUMs need dimension >= 2, got {d}")
    if grid is None:
        grid = grid_partition(gell_mann_basis(d))
    elif grid.dim != d:
        raise DomainError(f"grid dimension {grid.dim} does not match d={d}")
    t = _resolve_t(t, max_t_mum(grid))
    generators = mum_operators(grid)
    eye = np.eye(d, dtype=np.complex128)
    povms = []
    for b in range(d + 1):
        effects = eye / d + t * generators[b]
        _check_psd(effects, lambda n, b=b: f"(b={b + 1}, n={n + 1})")
        povms.append(Povm(dim=d, effects=_frozen(effects)))
    return MumSet(dim=d, t=t, kappa=mum_kappa(d, t), povms=tuple(povms))


def build_gsm(d: int, t="auto", basis: OperatorBasis | None = None) -> GsmSet:
    """Build the complete general SIC measurement of d^2 effects at sharpness t."""
    if d < 2:
        raise DomainError(f"general SIC measurements need dimension >= 2, got {d}")
    if basis is None:
        basis = gell_mann_basis(d)
    elif basis.dim != d:
        raise DomainError(f"basis dimension {basis.dim} does not match d={d}")
    t = _resolve_t(t, max_t_gsm(basis))
    generators = gsm_operators(basis)
    effects = np.eye(d, dtype=np.complex128)[None] / d**2 + t * generators
    _check_psd(effects, lambda i: f"alpha={i + 1}")
    return GsmSet(dim=d, t=t, a=gsm_a(d, t), effects=_frozen(effects))


def _pairwise_overlaps(effects: np.ndarray) -> np.ndarray:
    """Real Gram matrix Tr(P_i P_j) of a stack of Hermitian effects."""
    return np.einsum("aij,bji->ab", effects, effects).real


def _psd_deviation(effects: np.ndarray) -> float:
    worst = 0.0
    for effect in effects:
        worst = max(worst, -float(np.linalg.eigvalsh(effect)[0]))
    return max(0.0, worst)


def verify_mum(mset: MumSet, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check the MUM defining conditions and construction consistency.

    Conditions: unit effect traces, cross-measurement overlaps 1/d,
    within-measurement overlaps kappa (diagonal) and (1-kappa)/(d-1)
    (off-diagonal), positivity, per-measurement completeness (equivalently
    the generators of each measurement summing to zero), and the kappa(t)
    parameter formula.  kappa <= 1/d + 1e-12 is rejected as degenerate.
    """
    d = mset.dim
    flat = np.concatenate([p.effects for p in mset.povms])
    overlaps = _pairwise_overlaps(flat)
    group = np.repeat(np.arange(d + 1), d)
    same = group[:, None] == group[None, :]
    diag = np.eye(flat.shape[0], dtype=bool)

    eye = np.eye(d, dtype=np.complex128)
    completeness = max(
        float(np.abs(p.effects.sum(axis=0) - eye).max()) for p in mset.povms
    )
    deviations = {
        "effect_trace": float(np.abs(np.trace(flat, axis1=1, axis2=2) - 1.0).max()),
        "cross_overlap": float(np.abs(overlaps[~same] - 1.0 / d).max()),
        "within_overlap_diag": float(np.abs(overlaps[diag] - mset.kappa).max()),
        "within_overlap_offdiag": float(
            np.abs(overlaps[same & ~diag] - (1.0 - mset.kappa) / (d - 1)).max()
        ),
        "positivity": _psd_deviation(flat),
        "completeness": completeness,
        "parameter": abs(mset.kappa - mum_kappa(d, mset.t)),
    }
    degenerate = mset.kappa <= 1.0 / d + DEGENERACY_EPS
    return VerificationReport(kind=mset.kind, tol=tol, deviations=deviations, degenerate=degenerate)


def verify_gsm(gset: GsmSet, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check the general SIC defining conditions.

    Conditions: completeness, Tr(P_a^2) = a, pairwise overlaps
    (1 - a d)/(d (d^2 - 1)), positivity, and the a(t) parameter formula.
    a <= 1/d^3 + 1e-12 is rejected as degenerate.
    """
    d = gset.dim
    overlaps = _pairwise_overlaps(gset.effects)
    diag = np.eye(d * d, dtype=bool)
    pair_target = (1.0 - gset.a * d) / (d * (d * d - 1))
    deviations = {
        "self_overlap": float(np.abs(overlaps[diag] - gset.a).max()),
        "pair_overlap": float(np.abs(overlaps[~diag] - pair_target).max()),
        "positivity": _psd_deviation(gset.effects),
        "completeness": float(
            np.abs(gset.effects.sum(axis=0) - np.eye(d)).max()
        ),
        "parameter": abs(gset.a - gsm_a(d, gset.t)),
    }
    degenerate = gset.a <= 1.0 / d**3 + DEGENERACY_EPS
    return VerificationReport(kind=gset.kind, tol=tol, deviations=deviations, degenerate=degenerate)


def verify(family, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Dispatch to the appropriate verifier."""
    if isinstance(family, MumSet):
        return verify_mum(family, tol)
    if isinstance(family, GsmSet):
        return verify_gsm(family, tol)
    raise DomainError(f"cannot verify object of type {type(family).__name__}")


def smallest_factor(n: int) -> int:
    if n < 2:
        return n
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def build_mub(d: int) -> MumSet:
    """Complete set of d + 1 mutually unbiased bases for prime d, as a MumSet.

    For odd primes the bases are the computational basis together with the
    quadratic-phase bases whose vectors have components
    omega^(b k^2 + j k)/sqrt(d), omega = exp(2 pi i/d).  d = 2 uses the
    three Pauli eigenbases.  The result has kappa = 1 and rank-one effects.
    """
    if d < 2:
        raise DomainError(f"MUBs need dimension >= 2, got {d}")
    factor = smallest_factor(d)
    if factor != d:
        raise DomainError(f"dimension {d} is not prime (smallest factor {factor})")

    if d == 2:
        # columns of each array are the basis vectors (Z, X, Y eigenbases)
        s = 1 / np.sqrt(2)
        bases = [
            np.eye(2, dtype=np.complex128),
            np.array([[s, s], [s, -s]], dtype=np.complex128),
            np.array([[s, s], [1j * s, -1j * s]], dtype=np.complex128),
        ]
    else:
        k = np.arange(d)
        bases = [np.eye(d, dtype=np.complex128)]
        for b in range(d):
            cols = np.empty((d, d), dtype=np.complex128)
            for j in range(d):
                phase = (b * k * k + j * k) % d
                cols[:, j] = np.exp(2j * np.pi * phase / d) / np.sqrt(d)
            bases.append(cols)

    povms = []
    for cols in bases:
        effects = np.einsum("ik,jk->kij", cols, cols.conj())
        povms.append(Povm(dim=d, effects=_frozen(np.ascontiguousarray(effects))))
    t = 1.0 / (d + np.sqrt(d))
    return MumSet(dim=d, t=t, kappa=1.0, povms=tuple(povms), kind="mub")


def sic2_fixture() -> GsmSet:
    """The qubit tetrahedron SIC-POVM as a general SIC measurement (a = 1/4).

    Effects are (I + r.sigma)/4 for the four Bloch vectors
    (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), each scaled by 1/sqrt(3);
    pairwise vector overlaps are 1/(d+1) = 1/3.
    """
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)
    bloch = np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=np.float64
    ) / np.sqrt(3)
    effects = np.stack(
        [(eye + r[0] * sx + r[1] * sy + r[2] * sz) / 4.0 for r in bloch]
    )
    t = 1.0 / (6.0 * np.sqrt(6.0))
    return GsmSet(dim=2, t=t, a=0.25, effects=_frozen(effects), kind="sic")
