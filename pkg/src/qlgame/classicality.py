"""Tests for the existence of a single classical probability model.

Two observables: the chooser-first joint tables of the two play orders
must agree (the conditional product rule of one probability space), which
under symmetric conditioning forces uniform marginals.  Three observables:
a joint distribution over the 2^3 atoms reproducing all three pairwise
tables must exist; its necessary three-term correlation inequality and the
exact linear-feasibility decision are both provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .probability import (
    OUTCOME_VALUES,
    PROB_TOL,
    ContextData,
    Distribution,
    JointTable,
    TransitionMatrix,
    ValidationError,
    check_reversibility,
    joint_distribution,
    uniform_distribution,
)

UNIFORM_TOL = 1e-10
FEASIBILITY_TOL = 1e-9
BELL_TOL = 1e-12


@dataclass(frozen=True)
class BayesConsistencyReport:
    """Reversibility verdict plus the uniform-marginals criterion.

    Under symmetric conditioning with strictly positive transitions, the
    two play orders agree exactly when both marginals are uniform;
    ``theorem_check`` records whether that equivalence held (None when the
    data is not symmetrically conditioned).
    """

    consistent: bool
    max_discrepancy: float
    r1_symmetric: bool
    marginals_uniform: bool
    theorem_check: bool | None


def bayes_consistency(data: ContextData) -> BayesConsistencyReport:
    rev = check_reversibility(data)
    uniform = data.marginal_a.is_uniform(UNIFORM_TOL) and data.marginal_b.is_uniform(
        UNIFORM_TOL
    )
    theorem = (rev.consistent == uniform) if data.r1_symmetric else None
    return BayesConsistencyReport(
        consistent=rev.consistent,
        max_discrepancy=rev.max_discrepancy,
        r1_symmetric=data.r1_symmetric,
        marginals_uniform=uniform,
        theorem_check=theorem,
    )


def spin_transition_matrix(theta_i: float, theta_j: float) -> TransitionMatrix:
    """Two-outcome transition matrix with ``cos^2((theta_i - theta_j) / 2)``
    on the diagonal; symmetric and doubly stochastic by construction."""
    if not (math.isfinite(theta_i) and math.isfinite(theta_j)):
        raise ValidationError("angles must be finite")
    c = math.cos((theta_i - theta_j) / 2.0) ** 2
    s = 1.0 - c
    return TransitionMatrix(np.array([[c, s], [s, c]]))


def covariance(joint: JointTable) -> float:
    """Product moment with the encoding F=+1, I=-1:
    ``p(FF) + p(II) - p(FI) - p(IF)``."""
    if len(joint.alphabet) != 2:
        raise ValidationError("covariance requires a dichotomous joint table")
    if all(label in OUTCOME_VALUES for label in joint.alphabet):
        values = np.array([OUTCOME_VALUES[label] for label in joint.alphabet])
    else:
        values = np.array([1.0, -1.0])  # positional +-1 for other labels
    return float(values @ joint.entries @ values)


@dataclass(frozen=True)
class PairwiseSystem:
    """Three marginals plus the three chooser-first pairwise joint tables
    of the cycle (a, b), (b, c), (c, a).  Each joint's marginals must match
    the corresponding distributions."""

    marginal_a: Distribution
    marginal_b: Distribution
    marginal_c: Distribution
    joint_ab: JointTable
    joint_bc: JointTable
    joint_ca: JointTable

    def __post_init__(self):
        checks = (
            ("joint_ab", self.joint_ab, self.marginal_a, self.marginal_b),
            ("joint_bc", self.joint_bc, self.marginal_b, self.marginal_c),
            ("joint_ca", self.joint_ca, self.marginal_c, self.marginal_a),
        )
        for name, joint, first, second in checks:
            entries = joint.entries
            d1 = float(np.max(np.abs(entries.sum(axis=1) - first.probs)))
            d2 = float(np.max(np.abs(entries.sum(axis=0) - second.probs)))
            if max(d1, d2) > PROB_TOL:
                raise ValidationError(
                    f"{name} marginals disagree with the stated distributions "
                    f"by {max(d1, d2):.3g}"
                )

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.marginal_a.alphabet


def spin_system(
    theta_a: float,
    theta_b: float,
    theta_c: float,
    marginal_a: Distribution | None = None,
    marginal_b: Distribution | None = None,
    marginal_c: Distribution | None = None,
) -> PairwiseSystem:
    """Pairwise system of three angle-labelled observables with the
    cos^2-half-angle transitions; marginals default to uniform."""
    ma = marginal_a or uniform_distribution()
    mb = marginal_b or uniform_distribution()
    mc = marginal_c or uniform_distribution()
    return PairwiseSystem(
        marginal_a=ma,
        marginal_b=mb,
        marginal_c=mc,
        joint_ab=joint_distribution(ma, spin_transition_matrix(theta_a, theta_b), ("a", "b")),
        joint_bc=joint_distribution(mb, spin_transition_matrix(theta_b, theta_c), ("b", "c")),
        joint_ca=joint_distribution(mc, spin_transition_matrix(theta_c, theta_a), ("c", "a")),
    )


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: np.ndarray | None  # shape (k, k, k), axes ordered (a, b, c)


@dataclass(frozen=True)
class BellReport:
    cov_ab: float
    cov_bc: float
    cov_ca: float
    lhs: float
    rhs: float
    violated: bool
    lp_feasible: bool
    witness: np.ndarray | None


def _phase1_simplex(A: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray | None:
    """Find x >= 0 with A x = b (b >= 0) by minimizing artificial slack.

    Bland's rule on the original columns only (artificials never re-enter),
    so the iteration terminates even on the degenerate, rank-deficient
    systems produced by redundant marginal constraints.
    """
    m, n = A.shape
    T = np.zeros((m + 1, n + 1))
    T[:m, :n] = A
    T[:m, n] = b
    T[m, :n] = A.sum(axis=0)  # reduced costs after pricing out artificials
    T[m, n] = b.sum()
    basis = list(range(n, n + m))  # artificial i sits in row i
    while True:
        enter = -1
        for j in range(n):
            if T[m, j] > tol:
                enter = j
                break
        if enter < 0:
            break
        ratio = np.inf
        leave = -1
        col = T[:m, enter]
        for i in range(m):
            if col[i] > tol:
                r = T[i, n] / col[i]
                if leave < 0 or r < ratio - tol:
                    ratio = r
                    leave = i
                elif r <= ratio + tol and basis[i] < basis[leave]:
                    leave = i
        if leave < 0:
            break  # objective bounded below by 0, so this is numerically stalled
        pivot_row = T[leave] / T[leave, enter]
        T -= np.outer(T[:, enter], pivot_row)
        T[leave] = pivot_row
        basis[leave] = enter
    if T[m, n] > tol:
        return None
    x = np.zeros(n)
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i, n]
    return x


def _pairwise_constraints(k: int) -> np.ndarray:
    """Constraint matrix: rows fix each pairwise cell of the three joints
    (sums over the remaining observable) plus overall normalization."""
    n = k**3
    rows = []
    atoms = np.arange(n)
    i_idx, j_idx, l_idx = atoms // k**2, (atoms // k) % k, atoms % k
    for i in range(k):
        for j in range(k):
            rows.append((i_idx == i) & (j_idx == j))
    for j in range(k):
        for l in range(k):
            rows.append((j_idx == j) & (l_idx == l))
    for l in range(k):
        for i in range(k):
            rows.append((l_idx == l) & (i_idx == i))
    rows.append(np.ones(n, dtype=bool))
    return np.array(rows, dtype=float)


_CONSTRAINTS_CACHE: dict[int, np.ndarray] = {}


def joint_feasibility(system: PairwiseSystem) -> FeasibilityResult:
    """Decide whether one distribution over the k^3 atoms reproduces all
    three pairwise joints; exact linear feasibility (the atom count is
    exponential in the number of observables, fine for three)."""
    k = len(system.alphabet)
    if k not in _CONSTRAINTS_CACHE:
        _CONSTRAINTS_CACHE[k] = _pairwise_constraints(k)
    A = _CONSTRAINTS_CACHE[k]
    b = np.concatenate(
        [
            system.joint_ab.entries.ravel(),
            system.joint_bc.entries.ravel(),
            system.joint_ca.entries.ravel(),  # chooser-first: rows indexed by c
            [1.0],
        ]
    )
    x = _phase1_simplex(A, b, FEASIBILITY_TOL)
    if x is None:
        return FeasibilityResult(feasible=False, witness=None)
    return FeasibilityResult(feasible=True, witness=x.reshape((k, k, k)))


def bell_check(system: PairwiseSystem) -> BellReport:
    """Three-term correlation inequality |cov(a,b) - cov(b,c)| <= 1 - cov(c,a),
    together with the exact feasibility decision it is necessary for."""
    cov_ab = covariance(system.joint_ab)
    cov_bc = covariance(system.joint_bc)
    cov_ca = covariance(system.joint_ca)
    lhs = abs(cov_ab - cov_bc)
    rhs = 1.0 - cov_ca
    feas = joint_feasibility(system)
    return BellReport(
        cov_ab=cov_ab,
        cov_bc=cov_bc,
        cov_ca=cov_ca,
        lhs=lhs,
        rhs=rhs,
        violated=lhs > rhs + BELL_TOL,
        lp_feasible=feas.feasible,
        witness=feas.witness,
    )


def bell_scan(step: float) -> Iterator[dict]:
    """Bell reports for uniform-marginal spin systems on the angle grid
    ``{0, step, 2*step, ...} ^ 3`` over [0, 2*pi)."""
    if step <= 0:
        raise ValidationError("grid step must be positive")
    count = int(math.ceil(2.0 * math.pi / step - 1e-12))
    angles = [k * step for k in range(count)]
    unif = uniform_distribution()
    # joints only depend on angle pairs: cache them across the grid
    cache: dict[tuple, JointTable] = {}

    def pair_joint(ti: float, tj: float, order: tuple[str, str]) -> JointTable:
        key = (ti, tj, order)
        if key not in cache:
            cache[key] = joint_distribution(unif, spin_transition_matrix(ti, tj), order)
        return cache[key]

    for t1 in angles:
        for t2 in angles:
            joint_ab = pair_joint(t1, t2, ("a", "b"))
            for t3 in angles:
                system = PairwiseSystem(
                    marginal_a=unif,
                    marginal_b=unif,
                    marginal_c=unif,
                    joint_ab=joint_ab,
                    joint_bc=pair_joint(t2, t3, ("b", "c")),
                    joint_ca=pair_joint(t3, t1, ("c", "a")),
                )
                report = bell_check(system)
                yield {
                    "theta1": t1,
                    "theta2": t2,
                    "theta3": t3,
                    "cov_ab": report.cov_ab,
                    "cov_bc": report.cov_bc,
                    "cov_ca": report.cov_ca,
                    "lhs": report.lhs,
                    "rhs": report.rhs,
                    "violated": report.violated,
                    "lp_feasible": report.lp_feasible,
                }
