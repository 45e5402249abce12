"""Reconstruction of a complex probability amplitude from contextual data.

For a context with symmetric conditioning and strictly positive
probabilities, the deviation of each marginal from the total-probability
prediction defines an interference coefficient lambda.  When every
|lambda| <= 1 the context admits a cosine parametrization: phases are
chosen with arccos, the amplitude is assembled from the square roots of
the products of probabilities, and the second observable's basis follows
from the same phases.  Squared inner products then return every input
probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import OrthonormalBasis, delta_basis
from .probability import ContextData, Distribution, TransitionMatrix, ValidationError

TRIGONOMETRIC = "trigonometric"
HYPERBOLIC = "hyperbolic"

# Tolerance for the phase-difference constraint theta_2 - theta_1 = pi (mod 2pi)
# and for the Born-rule round-trip checks.
PHASE_TOL = 1e-10


class HyperbolicContextError(ValueError):
    """Context has |lambda| > 1: no cosine-phase representation exists."""


class PhaseConstraintError(ValueError):
    """No arccos branch satisfies the pi phase-difference constraint."""


@dataclass(frozen=True)
class InterferenceProfile:
    """Interference coefficients, their classification and chosen phases.

    ``thetas`` is None for hyperbolic contexts (no cosine parametrization).
    """

    lambdas: np.ndarray
    classification: str
    thetas: np.ndarray | None

    def __post_init__(self):
        lambdas = np.array(self.lambdas, dtype=float)
        lambdas.setflags(write=False)
        object.__setattr__(self, "lambdas", lambdas)
        if self.thetas is not None:
            thetas = np.array(self.thetas, dtype=float)
            thetas.setflags(write=False)
            object.__setattr__(self, "thetas", thetas)


@dataclass(frozen=True)
class QLRepresentation:
    """State vector plus the two observable bases reconstructed from a context.

    ``psi`` lives in the coordinates of ``b_basis`` (delta functions on the
    second observable's outcomes); ``a_basis`` carries the phases.
    """

    psi: np.ndarray
    b_basis: OrthonormalBasis
    a_basis: OrthonormalBasis
    profile: InterferenceProfile
    source: ContextData

    def __post_init__(self):
        psi = np.array(self.psi, dtype=complex)
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)


def interference_coefficients(data: ContextData) -> np.ndarray:
    """Normalized deviation of the b-marginal from the total-probability rule.

    lambda(beta) = [p_b(beta) - sum_alpha p_a(alpha) p(beta|alpha)]
                   / [2 sqrt(prod_alpha p_a(alpha) p(beta|alpha))]

    Requires strictly positive probabilities; a zero entry would make the
    denominator vanish.
    """
    if not data.r2_positive:
        raise ValidationError(_zero_entry_message(data))
    pa = data.marginal_a.probs
    pb = data.marginal_b.probs
    t = data.trans_b_given_a.rows
    predicted = pa @ t
    denominator = 2.0 * np.sqrt(np.prod(pa[:, None] * t, axis=0))
    return (pb - predicted) / denominator


def _zero_entry_message(data: ContextData) -> str:
    for name, values in (
        ("marginal_a", data.marginal_a.probs),
        ("marginal_b", data.marginal_b.probs),
        ("trans_b_given_a", data.trans_b_given_a.rows),
        ("trans_a_given_b", data.trans_a_given_b.rows),
    ):
        flat = np.atleast_1d(values).ravel()
        if np.any(flat <= 0.0):
            idx = int(np.argmax(flat <= 0.0))
            return (
                f"strict positivity (R2) violated: {name} entry {idx} is "
                f"{flat[idx]:.12g}"
            )
    return "strict positivity (R2) violated"


def classify_context(lambdas) -> str:
    """``trigonometric`` iff every |lambda| <= 1, else ``hyperbolic``.

    The boundary |lambda| = 1 counts as trigonometric with degenerate phase
    0 or pi.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    if not np.all(np.isfinite(lambdas)):
        raise ValidationError("interference coefficients must be finite")
    return TRIGONOMETRIC if float(np.max(np.abs(lambdas))) <= 1.0 else HYPERBOLIC


def interference_profile(data: ContextData) -> InterferenceProfile:
    """Coefficients, classification, and (for trigonometric data) the phases."""
    lambdas = interference_coefficients(data)
    classification = classify_context(lambdas)
    thetas = _select_phases(lambdas) if classification == TRIGONOMETRIC else None
    return InterferenceProfile(lambdas, classification, thetas)


def _phase_gap(theta2: float, theta1: float) -> float:
    return abs(math.remainder(theta2 - theta1 - math.pi, 2.0 * math.pi))


def _select_phases(lambdas: np.ndarray) -> np.ndarray:
    """theta_1 = arccos(lambda_1) in [0, pi]; theta_2 on whichever arccos
    branch puts the difference at pi (mod 2pi)."""
    clipped = np.clip(lambdas, -1.0, 1.0)
    theta1 = math.acos(clipped[0])
    principal = math.acos(clipped[1])
    for candidate in (principal, 2.0 * math.pi - principal):
        if _phase_gap(candidate, theta1) <= PHASE_TOL:
            return np.array([theta1, candidate])
    raise PhaseConstraintError(
        "phase constraint unsatisfiable: no arccos branch gives "
        f"theta_2 - theta_1 = pi (mod 2pi) for lambdas {lambdas.tolist()}"
    )


def build_representation(data: ContextData) -> QLRepresentation:
    """Construct state and bases whose squared inner products return the data.

    Requires symmetric conditioning, strict positivity and a trigonometric
    classification; hyperbolic contexts are rejected, never silently
    represented.
    """
    if not data.r1_symmetric:
        raise ValidationError(
            "symmetric conditioning (R1) required: transition matrices are "
            "not each other's transpose"
        )
    lambdas = interference_coefficients(data)
    if classify_context(lambdas) == HYPERBOLIC:
        raise HyperbolicContextError(
            "hyperbolic context: no trigonometric representation "
            f"(max |lambda| = {float(np.max(np.abs(lambdas))):.12g} > 1)"
        )
    thetas = _select_phases(lambdas)
    profile = InterferenceProfile(lambdas, TRIGONOMETRIC, thetas)

    pa = data.marginal_a.probs
    t = data.trans_b_given_a.rows
    phases = np.exp(1j * thetas)
    # psi(beta) = sqrt(p_a(1) p(beta|1)) + e^{i theta(beta)} sqrt(p_a(2) p(beta|2))
    psi = np.sqrt(pa[0] * t[0]) + phases * np.sqrt(pa[1] * t[1])

    u = np.sqrt(t)
    a_vectors = np.array([
        [u[0, 0], u[0, 1]],
        [phases[0] * u[1, 0], phases[1] * u[1, 1]],
    ])
    rep = QLRepresentation(
        psi=psi,
        b_basis=delta_basis(2),
        a_basis=OrthonormalBasis(a_vectors),
        profile=profile,
        source=data,
    )
    _verify_round_trip(rep)
    return rep


def _verify_round_trip(rep: QLRepresentation) -> None:
    psi, data = rep.psi, rep.source
    if abs(np.linalg.norm(psi) - 1.0) > PHASE_TOL:
        raise ValidationError(f"constructed state has norm {np.linalg.norm(psi):.12g}")
    checks = [
        np.abs(np.abs(rep.b_basis.vectors.conj() @ psi) ** 2 - data.marginal_b.probs),
        np.abs(np.abs(rep.a_basis.vectors.conj() @ psi) ** 2 - data.marginal_a.probs),
        np.abs(
            np.abs(rep.a_basis.vectors @ rep.b_basis.vectors.conj().T) ** 2
            - data.trans_b_given_a.rows
        ),
    ]
    worst = max(float(np.max(c)) for c in checks)
    if worst > PHASE_TOL:
        raise ValidationError(
            f"representation fails the probability round-trip by {worst:.3g}"
        )


def reconstruct_data(rep: QLRepresentation) -> ContextData:
    """Recover the context from the representation via squared inner products."""
    psi = rep.psi
    marginal_b = np.abs(rep.b_basis.vectors.conj() @ psi) ** 2
    marginal_a = np.abs(rep.a_basis.vectors.conj() @ psi) ** 2
    # trans[alpha, beta] = |<e_beta^b, e_alpha^a>|^2; symmetric conditioning
    # is automatic because |<x, y>| = |<y, x>|.
    trans = np.abs(rep.a_basis.vectors @ rep.b_basis.vectors.conj().T) ** 2
    alphabet = rep.source.alphabet
    return ContextData(
        marginal_a=Distribution(marginal_a / marginal_a.sum(), alphabet),
        marginal_b=Distribution(marginal_b / marginal_b.sum(), alphabet),
        trans_b_given_a=TransitionMatrix(trans / trans.sum(axis=1, keepdims=True), alphabet),
        trans_a_given_b=TransitionMatrix(trans.T / trans.T.sum(axis=1, keepdims=True), alphabet),
    )


def _complex_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def representation_to_json(rep: QLRepresentation) -> dict:
    from .probability import context_to_json

    return {
        "lambda": rep.profile.lambdas.tolist(),
        "theta": rep.profile.thetas.tolist() if rep.profile.thetas is not None else None,
        "classification": rep.profile.classification,
        "psi": _complex_pairs(rep.psi),
        "a_basis": [_complex_pairs(v) for v in rep.a_basis.vectors],
        "b_basis": [_complex_pairs(v) for v in rep.b_basis.vectors],
        "reconstructed": context_to_json(reconstruct_data(rep)),
    }
