"""Probabilities, variances, coincidence and the invariant-information balance.

Every quantity comes in two independent flavours: a direct evaluation that
sums over the effects of a measurement family with no algebraic shortcuts,
and the closed forms in terms of dimension, sharpness parameter and state
purity.  Reconciling the two is the point of this package, so the only
intermediate the paths share is the outcome probabilities themselves.

Closed forms (p = Tr rho^2):

* state only:      V = d - p,                         V_min = d - 1,      V_max = d - 1/d
* MUM, kappa:      V = (kappa d - 1)/(d - 1) (d - p), V_min = kappa d - 1, V_max = (kappa d - 1)(d + 1)/d,
                   C = ((kappa d - 1)(d p - 1) + d^2 - 1)/(d (d - 1))
* general SIC, a:  with w = (a d^3 - 1)/(d (d^2 - 1)):
                   V = w (d - p), V_min = w (d - 1), V_max = w (d - 1/d),
                   C = ((a d^3 - 1) p + d (1 - a d))/(d (d^2 - 1))

and always I = V_max - V, U = V - V_min.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import gell_mann_basis
from .errors import DomainError, NumericalError, VerificationError
from .linalg import IMAG_TOL, purity
from .measurements import GsmSet, MumSet, Povm, verify
from .states import DensityMatrix

PROB_TOL = 1e-10
VAR_FLOOR = -1e-10
REPORT_VERIFY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Measurement outcome probabilities with their effect labels."""

    probs: np.ndarray
    labels: tuple


def measurement_probs(povm: Povm, rho: DensityMatrix) -> OutcomeDistribution:
    """Born probabilities p_n = Tr(P_n rho) for one measurement."""
    if povm.dim != rho.dim:
        raise DomainError(f"dimension mismatch: POVM d={povm.dim}, state d={rho.dim}")
    traces = np.einsum("kij,ji->k", povm.effects, rho.matrix)
    if np.abs(traces.imag).max() >= IMAG_TOL:
        raise NumericalError("outcome probability has a non-negligible imaginary part")
    p = traces.real
    if p.min() < -PROB_TOL or p.max() > 1.0 + PROB_TOL:
        raise NumericalError(f"probability out of [0, 1]: {p.min()!r}..{p.max()!r}")
    if abs(p.sum() - 1.0) >= PROB_TOL:
        raise NumericalError(f"probabilities sum to {p.sum()!r}, not 1")
    return OutcomeDistribution(probs=p, labels=tuple(range(p.size)))


def family_probs(family, rho: DensityMatrix) -> list[OutcomeDistribution]:
    """One OutcomeDistribution per measurement; labels are (povm, outcome) pairs."""
    dists = []
    for b, povm in enumerate(as_povms(family)):
        dist = measurement_probs(povm, rho)
        dists.append(
            OutcomeDistribution(probs=dist.probs, labels=tuple((b, n) for n in dist.labels))
        )
    return dists


def as_povms(family) -> list[Povm]:
    """Normalize a measurement family to its list of POVMs."""
    if isinstance(family, MumSet):
        return list(family.povms)
    if isinstance(family, GsmSet):
        return [Povm(dim=family.dim, effects=family.effects)]
    if isinstance(family, Povm):
        return [family]
    if isinstance(family, (list, tuple)) and all(isinstance(p, Povm) for p in family):
        return list(family)
    raise DomainError(f"not a measurement family: {type(family).__name__}")


def variance(x, rho: DensityMatrix) -> float:
    """V(X|rho) = <X^2> - <X>^2 for an observable X."""
    a = np.asarray(getattr(x, "matrix", x), dtype=np.complex128)
    if a.shape != rho.matrix.shape:
        raise DomainError(f"dimension mismatch: {a.shape} vs {rho.matrix.shape}")
    mean = np.einsum("ij,ji->", rho.matrix, a)
    second = np.einsum("ij,jk,ki->", rho.matrix, a, a)
    if max(abs(mean.imag), abs(second.imag)) >= IMAG_TOL:
        raise NumericalError("variance has a non-negligible imaginary part")
    v = float(second.real - mean.real**2)
    if v < VAR_FLOOR:
        raise NumericalError(f"variance {v!r} below the rounding floor {VAR_FLOOR}")
    return v


def index_of_coincidence(dist) -> float:
    """sum_j p_j^2; for a family, pass the distributions of all its POVMs."""
    if isinstance(dist, OutcomeDistribution):
        return float((dist.probs**2).sum())
    return float(sum((d.probs**2).sum() for d in dist))


def total_variance_direct(family, rho: DensityMatrix) -> float:
    """Sum of effect variances over the whole family, term by term."""
    total = 0.0
    for povm in as_povms(family):
        if povm.dim != rho.dim:
            raise DomainError(f"dimension mismatch: POVM d={povm.dim}, state d={rho.dim}")
        stack = povm.effects
        p = _kernels.real_trace_batch(stack, rho.matrix)
        m2 = _kernels.real_trace_batch(stack @ stack, rho.matrix)
        terms = m2 - p * p
        if terms.min() < VAR_FLOOR:
            raise NumericalError(f"effect variance {terms.min()!r} below {VAR_FLOOR}")
        total += float(terms.sum())
    return total


@dataclass(frozen=True)
class ClosedForms:
    """Closed-form quantities at a given purity; C is None for state-only."""

    C: float | None
    V: float
    V_min: float
    V_max: float
    I: float
    U: float


_STATE_KINDS = {None, "state", "state-only"}
_MUM_KINDS = {"mum", "mub"}
_GSM_KINDS = {"gsm", "sic"}


def closed_forms(kind, d: int, parameter, purity_value: float) -> ClosedForms:
    """Closed forms for a family kind at the given purity.

    kind is one of "state"/None, "mum"/"mub" (parameter kappa) or
    "gsm"/"sic" (parameter a).  I and U are formed as the variance
    differences V_max - V and V - V_min.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if not (1.0 / d - 1e-12 <= purity_value <= 1.0 + 1e-12):
        raise DomainError(f"purity {purity_value!r} outside [1/{d}, 1]")
    p = purity_value

    if kind in _STATE_KINDS:
        c = None
        v = d - p
        v_min = d - 1.0
        v_max = d - 1.0 / d
    elif kind in _MUM_KINDS:
        kappa = float(parameter)
        if not (1.0 / d < kappa <= 1.0 + 1e-12):
            raise DomainError(f"kappa {kappa!r} outside (1/{d}, 1]")
        c = ((kappa * d - 1.0) * (d * p - 1.0) + d * d - 1.0) / (d * (d - 1.0))
        w = (kappa * d - 1.0) / (d - 1.0)
        v = w * (d - p)
        v_min = kappa * d - 1.0
        v_max = (kappa * d - 1.0) * (d + 1.0) / d
    elif kind in _GSM_KINDS:
        a = float(parameter)
        if not (1.0 / d**3 < a <= 1.0 / d**2 + 1e-12):
            raise DomainError(f"a {a!r} outside (1/d^3, 1/d^2] for d={d}")
        c = ((a * d**3 - 1.0) * p + d * (1.0 - a * d)) / (d * (d * d - 1.0))
        w = (a * d**3 - 1.0) / (d * (d * d - 1.0))
        v = w * (d - p)
        v_min = w * (d - 1.0)
        v_max = w * (d - 1.0 / d)
    else:
        raise DomainError(f"unknown family kind {kind!r}")

    return ClosedForms(C=c, V=v, V_min=v_min, V_max=v_max, I=v_max - v, U=v - v_min)


@dataclass(frozen=True)
class BzReport:
    """Direct and closed-form invariant-information quantities, reconciled."""

    dim: int
    kind: str
    parameter: float | None
    purity: float
    C_direct: float | None
    C_closed: float | None
    V_direct: float
    V_closed: float
    V_min: float
    V_max: float
    I_direct: float
    I_closed: float
    U_direct: float
    U_closed: float
    max_abs_discrepancy: float
    negatives_clamped: int = 0


class DirectEvaluator:
    """Evaluates reports for many states against one verified family.

    Verifies the family once at construction and precomputes the effect
    stack and its squares, so sweeps pay only two batched trace products
    per state.  Pass family=None for the state-only quantities, where the
    direct total variance sums observable variances over a complete
    orthonormal Hermitian operator basis.
    """

    def __init__(self, family, dim: int | None = None, verify_tol: float = REPORT_VERIFY_TOL):
        if family is None:
            if dim is None:
                raise DomainError("state-only evaluation needs an explicit dim")
            self.kind = "state-only"
            self.parameter = None
            self.dim = dim
            basis = gell_mann_basis(dim)
            eye = np.eye(dim, dtype=np.complex128) / np.sqrt(dim)
            self.observables = np.concatenate([basis.ops, eye[None]])
            self.groups = None
        else:
            report = verify(family, verify_tol)
            if not report.passed:
                raise VerificationError(
                    f"family failed verification at {verify_tol:g}: "
                    + ", ".join(report.failures())
                )
            # reports use the closed-form family kinds; a SIC-POVM is the
            # rank-one general SIC case
            self.kind = "gsm" if family.kind == "sic" else family.kind
            self.parameter = family.kappa if isinstance(family, MumSet) else family.a
            self.dim = family.dim
            self.observables = np.ascontiguousarray(np.concatenate(family.effect_groups()))
            self.groups = [g.shape[0] for g in family.effect_groups()]
        self.observables_sq = np.ascontiguousarray(self.observables @ self.observables)

    def report(self, rho: DensityMatrix) -> BzReport:
        if rho.dim != self.dim:
            raise DomainError(f"dimension mismatch: family d={self.dim}, state d={rho.dim}")
        d = self.dim
        p = _kernels.real_trace_batch(self.observables, rho.matrix)
        m2 = _kernels.real_trace_batch(self.observables_sq, rho.matrix)
        terms = m2 - p * p
        if terms.min() < VAR_FLOOR:
            raise NumericalError(f"effect variance {terms.min()!r} below {VAR_FLOOR}")
        clamped = int((terms < 0.0).sum())
        v_direct = float(np.maximum(terms, 0.0).sum())

        c_direct = None
        if self.groups is not None:
            if p.min() < -PROB_TOL or p.max() > 1.0 + PROB_TOL:
                raise NumericalError(f"probability out of [0, 1]: {p.min()!r}..{p.max()!r}")
            start = 0
            for size in self.groups:
                group_sum = float(p[start : start + size].sum())
                if abs(group_sum - 1.0) >= PROB_TOL:
                    raise NumericalError(f"POVM probabilities sum to {group_sum!r}")
                start += size
            c_direct = float((p[: sum(self.groups)] ** 2).sum())

        pur = purity(rho)
        cf = closed_forms(self.kind, d, self.parameter, pur)
        i_direct = cf.V_max - v_direct
        u_direct = v_direct - cf.V_min

        pairs = [(v_direct, cf.V), (i_direct, cf.I), (u_direct, cf.U)]
        if c_direct is not None:
            pairs.append((c_direct, cf.C))
        discrepancy = max(abs(x - y) for x, y in pairs)

        return BzReport(
            dim=d,
            kind=self.kind,
            parameter=self.parameter,
            purity=pur,
            C_direct=c_direct,
            C_closed=cf.C,
            V_direct=v_direct,
            V_closed=cf.V,
            V_min=cf.V_min,
            V_max=cf.V_max,
            I_direct=i_direct,
            I_closed=cf.I,
            U_direct=u_direct,
            U_closed=cf.U,
            max_abs_discrepancy=discrepancy,
            negatives_clamped=clamped,
        )


def bz_report(family, rho: DensityMatrix, verify_tol: float = REPORT_VERIFY_TOL) -> BzReport:
    """One-shot report for a family (or None for state-only) and a state."""
    dim = rho.dim if family is None else None
    return DirectEvaluator(family, dim=dim, verify_tol=verify_tol).report(rho)
