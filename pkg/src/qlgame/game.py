"""Choose-and-test game payoffs and their analytic averages.

Each part of a game names a chooser and a tester; the part's joint
statistics always put the chooser first, so the two play orders of a
round never share a joint table.  Averages come in a probabilistic form
(payoff-weighted joint tables) and an equivalent state-space form built
from squared inner products.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .hilbert import born_probability, expand_in_basis, inner_product, is_unit
from .probability import ContextData, JointTable, ValidationError, joint_distribution
from .representation import (
    HYPERBOLIC,
    HyperbolicContextError,
    QLRepresentation,
    build_representation,
)

ZERO_SUM_TOL = 1e-12


class PayoffConventionWarning(UserWarning):
    """A payoff entry contradicts the natural testing-game sign convention."""


@dataclass(frozen=True)
class PayoffMatrix:
    """Payoffs ``entries[chooser_outcome, tester_outcome]`` for one player
    in one game part.  ``alphabet`` is optional; when set it must match the
    joint table the matrix is paired with."""

    entries: np.ndarray
    alphabet: tuple[str, ...] | None = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValidationError(f"payoff matrix must be square, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValidationError("payoff entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", tuple(self.alphabet))
            if len(self.alphabet) != entries.shape[0]:
                raise ValidationError("payoff alphabet does not match matrix size")


@dataclass(frozen=True)
class GamePart:
    chooser: str
    tester: str
    payoffs: Mapping[str, PayoffMatrix]

    def __post_init__(self):
        object.__setattr__(self, "payoffs", dict(self.payoffs))
        if self.chooser == self.tester:
            raise ValidationError(
                f"part has identical chooser and tester {self.chooser!r}"
            )


@dataclass(frozen=True)
class GameSpec:
    """Roster, ordered parts, and per-part per-player payoff matrices."""

    players: tuple[str, ...]
    parts: tuple[GamePart, ...]
    zero_sum: bool = False

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.players) not in (2, 3):
            raise ValidationError("roster must have 2 or 3 players")
        if len(set(self.players)) != len(self.players):
            raise ValidationError("player names must be distinct")
        for k, part in enumerate(self.parts):
            for name in (part.chooser, part.tester):
                if name not in self.players:
                    raise ValidationError(f"part {k} references unknown player {name!r}")
            for player in part.payoffs:
                if player not in self.players:
                    raise ValidationError(f"part {k} pays unknown player {player!r}")
            if self.zero_sum:
                total = sum(m.entries for m in part.payoffs.values())
                if np.max(np.abs(total)) > ZERO_SUM_TOL:
                    raise ValidationError(
                        f"zero-sum violated in part {k}: cell sums reach "
                        f"{float(np.max(np.abs(total))):.3g}"
                    )
            _warn_on_sign_convention(k, part)


def _warn_on_sign_convention(k: int, part: GamePart) -> None:
    # Natural convention: the tester gains on the diagonal (correct answer)
    # and loses off it; the chooser is reversed.  Advisory only.
    for player, matrix in part.payoffs.items():
        h = matrix.entries
        diag = np.diag(h)
        off = h[~np.eye(h.shape[0], dtype=bool)]
        if player == part.tester and (np.any(diag < 0) or np.any(off > 0)):
            warnings.warn(
                f"part {k}: tester {player!r} payoff signs look inverted",
                PayoffConventionWarning,
                stacklevel=3,
            )
        if player == part.chooser and (np.any(diag > 0) or np.any(off < 0)):
            warnings.warn(
                f"part {k}: chooser {player!r} payoff signs look inverted",
                PayoffConventionWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class GameAverages:
    """Expected payoff per part and player, with per-player totals."""

    part_averages: tuple[dict[str, float], ...]
    totals: dict[str, float]

    @classmethod
    def from_parts(cls, parts, players) -> "GameAverages":
        parts = tuple({p: float(avg.get(p, 0.0)) for p in players} for avg in parts)
        totals = {p: float(sum(avg[p] for avg in parts)) for p in players}
        return cls(parts, totals)


def part_average(joint: JointTable, payoff: PayoffMatrix) -> float:
    """Payoff-weighted sum ``sum_{i,j} h[i, j] p(first=i, second=j)``."""
    if payoff.alphabet is not None and payoff.alphabet != joint.alphabet:
        raise ValidationError(
            f"alphabet mismatch: payoff {payoff.alphabet} vs joint {joint.alphabet}"
        )
    if payoff.entries.shape != joint.entries.shape:
        raise ValidationError(
            f"payoff shape {payoff.entries.shape} does not match joint "
            f"{joint.entries.shape}"
        )
    return float(np.sum(payoff.entries * joint.entries))


PairContexts = Mapping[tuple[str, str], ContextData]


def normalize_contexts(spec: GameSpec, contexts) -> PairContexts:
    if isinstance(contexts, ContextData):
        if len(spec.players) != 2:
            raise ValidationError(
                "a single context only covers a two-player game; pass a "
                "mapping of (chooser, tester) pairs to contexts"
            )
        return {(spec.players[0], spec.players[1]): contexts}
    return dict(contexts)


def part_statistics(part: GamePart, pair_contexts: PairContexts):
    """Chooser marginal and tester-given-chooser transitions for one part.

    The pair's context may be stored under either orientation; the chooser
    side selects which marginal/transition pair applies.
    """
    key = (part.chooser, part.tester)
    if key in pair_contexts:
        ctx = pair_contexts[key]
        return ctx.marginal_a, ctx.trans_b_given_a
    reverse = (part.tester, part.chooser)
    if reverse in pair_contexts:
        ctx = pair_contexts[reverse]
        return ctx.marginal_b, ctx.trans_a_given_b
    raise ValidationError(
        f"no transition data for part ({part.chooser}, {part.tester})"
    )


def part_joint(part: GamePart, pair_contexts: PairContexts) -> JointTable:
    """Chooser-first joint table for one part."""
    marginal, trans = part_statistics(part, pair_contexts)
    return joint_distribution(marginal, trans, (part.chooser, part.tester))


def total_averages(spec: GameSpec, contexts) -> GameAverages:
    """Probabilistic part averages and per-player totals.

    ``contexts`` is a single :class:`ContextData` for a two-player game, or
    a mapping from (chooser, tester) pairs to contexts.
    """
    pair_contexts = normalize_contexts(spec, contexts)
    parts = []
    for part in spec.parts:
        joint = part_joint(part, pair_contexts)
        parts.append(
            {player: part_average(joint, payoff) for player, payoff in part.payoffs.items()}
        )
    return GameAverages.from_parts(parts, spec.players)


def _born_profile(rep: QLRepresentation):
    psi = rep.psi
    born_a = np.array([born_probability(psi, v) for v in rep.a_basis.vectors])
    born_b = np.array([born_probability(psi, v) for v in rep.b_basis.vectors])
    # trans[alpha, beta] = |<e_beta^b, e_alpha^a>|^2, same modulus either way round
    trans = np.abs(rep.a_basis.vectors @ rep.b_basis.vectors.conj().T) ** 2
    return born_a, born_b, trans


def ql_average(rep: QLRepresentation, spec: GameSpec) -> GameAverages:
    """State-space form of the averages, term by term from squared inner
    products.  Agrees with :func:`total_averages` on the reconstructed data.
    """
    if rep.profile.classification == HYPERBOLIC:
        raise HyperbolicContextError("hyperbolic representation has no QL averages")
    if len(spec.players) != 2:
        raise ValidationError("QL averages are defined for two-player games")
    born_a, born_b, trans = _born_profile(rep)
    first, second = spec.players
    parts = []
    for part in spec.parts:
        if part.chooser == first:
            weights = born_a[:, None] * trans
        else:
            weights = born_b[:, None] * trans.T
        parts.append(
            {
                player: float(np.sum(payoff.entries * weights))
                for player, payoff in part.payoffs.items()
            }
        )
    return GameAverages.from_parts(parts, spec.players)


def zero_sum_symmetric_average(rep: QLRepresentation, tester_payoff_part1: PayoffMatrix) -> float:
    """Factored total for the tester of part 1 in a zero-sum game whose
    second part mirrors the first: each chooser-outcome row contributes the
    difference of the two squared state projections times its payoff row.
    """
    born_a, born_b, trans = _born_profile(rep)
    h = tester_payoff_part1.entries
    row_payoff = np.sum(h * trans, axis=1)
    return float(np.sum((born_a - born_b) * row_payoff))


def interference_average(rep: QLRepresentation, tester_payoff_part1: PayoffMatrix) -> float:
    """Same factored total, but with the second projection expanded through
    the basis-superposition coefficients and an explicit cosine cross term."""
    psi = rep.psi
    born_a, _, trans = _born_profile(rep)
    proj_a = np.array([inner_product(psi, v) for v in rep.a_basis.vectors])
    born_b_expanded = np.empty(len(born_a))
    for x in range(len(born_a)):
        coeff = expand_in_basis(rep.b_basis.vectors[x], rep.a_basis)
        z = np.conj(coeff) * proj_a
        cross = 2.0 * np.abs(z[0]) * np.abs(z[1]) * np.cos(np.angle(z[0]) - np.angle(z[1]))
        born_b_expanded[x] = abs(z[0]) ** 2 + abs(z[1]) ** 2 + cross
    h = tester_payoff_part1.entries
    row_payoff = np.sum(h * trans, axis=1)
    return float(np.sum((born_a - born_b_expanded) * row_payoff))


@dataclass(frozen=True)
class ThreePlayerReport:
    """Pairwise representations of a three-player game with the basis-map
    unitaries between consecutive state spaces and their identification
    discrepancies ``||U psi - psi'||``."""

    pairs: tuple[tuple[str, str], ...]
    representations: tuple[QLRepresentation, ...]
    unitaries: tuple[np.ndarray, np.ndarray]
    discrepancies: tuple[float, float]


def _cycle_order(keys) -> list[tuple[str, str]]:
    keys = [tuple(k) for k in keys]
    if len(keys) != 3:
        raise ValidationError(f"need exactly 3 pair contexts, got {len(keys)}")
    ordered = [keys[0]]
    remaining = keys[1:]
    for _ in range(2):
        nxt = [k for k in remaining if k[0] == ordered[-1][1]]
        if len(nxt) != 1:
            raise ValidationError(f"pair keys {keys} do not form a single cycle")
        ordered.append(nxt[0])
        remaining.remove(nxt[0])
    if ordered[-1][1] != ordered[0][0]:
        raise ValidationError(f"pair keys {keys} do not close into a cycle")
    return ordered


def _basis_map_unitary(source_vectors: np.ndarray, target_vectors: np.ndarray) -> np.ndarray:
    """Unitary sending the k-th source basis vector to the k-th target one."""
    n = source_vectors.shape[0]
    u = np.zeros((n, n), dtype=complex)
    for k in range(n):
        u += np.outer(target_vectors[k], np.conj(source_vectors[k]))
    return u


def three_player_representations(pair_contexts: PairContexts) -> ThreePlayerReport:
    """Build the three pairwise representations of a cyclic three-player
    game and measure how far the shared-observable basis maps carry one
    state onto the next.

    The unitary between consecutive spaces maps the shared observable's
    basis in the first space (where it is the tester's delta basis) onto
    its basis in the second (where it is the chooser's constructed basis);
    mapping the full two-vector family determines the unitary completely.
    The discrepancies are reported, not assumed zero.
    """
    contexts = {tuple(k): v for k, v in pair_contexts.items()}
    ordered = _cycle_order(contexts.keys())
    reps = []
    for pair in ordered:
        try:
            reps.append(build_representation(contexts[pair]))
        except (HyperbolicContextError, ValidationError) as exc:
            raise type(exc)(f"pair {pair}: {exc}") from exc
    unitaries = []
    discrepancies = []
    for rep_from, rep_to in ((reps[0], reps[1]), (reps[1], reps[2])):
        # shared observable: tester of rep_from == chooser of rep_to
        u = _basis_map_unitary(rep_from.b_basis.vectors, rep_to.a_basis.vectors)
        unitaries.append(u)
        discrepancies.append(float(np.linalg.norm(u @ rep_from.psi - rep_to.psi)))
    return ThreePlayerReport(
        pairs=tuple(ordered),
        representations=tuple(reps),
        unitaries=tuple(unitaries),
        discrepancies=tuple(discrepancies),
    )


def multidim_average(psi, a_basis, b_basis, payoff_part1, payoff_part2) -> float:
    """Two-part tester average in dimension n.

    Part 1: chooser outcome j weighted by ``|<psi, e_j^a>|^2``, answer i by
    ``|<e_i^b, e_j^a>|^2``.  Part 2 swaps the roles onto the b basis.
    Payoff matrices are chooser-first indexed.
    """
    psi = np.asarray(psi, dtype=complex)
    h1 = payoff_part1.entries if isinstance(payoff_part1, PayoffMatrix) else np.asarray(payoff_part1, float)
    h2 = payoff_part2.entries if isinstance(payoff_part2, PayoffMatrix) else np.asarray(payoff_part2, float)
    n = psi.size
    if a_basis.dimension != n or b_basis.dimension != n:
        raise ValidationError(
            f"dimension mismatch: psi has {n}, bases have "
            f"{a_basis.dimension} and {b_basis.dimension}"
        )
    if h1.shape != (n, n) or h2.shape != (n, n):
        raise ValidationError("payoff matrices must be n x n")
    if not is_unit(psi):
        raise ValidationError(f"psi has norm {np.linalg.norm(psi):.12g}, expected 1")
    born_a = np.abs(a_basis.vectors.conj() @ psi) ** 2
    born_b = np.abs(b_basis.vectors.conj() @ psi) ** 2
    overlap = np.abs(b_basis.vectors @ a_basis.vectors.conj().T) ** 2  # [i, j]
    part1 = float(np.sum(h1.T * (born_a[None, :] * overlap)))
    part2 = float(np.sum(h2 * (born_b[:, None] * overlap)))
    return part1 + part2


def game_to_json(spec: GameSpec) -> dict:
    return {
        "players": list(spec.players),
        "zero_sum": spec.zero_sum,
        "parts": [
            {
                "chooser": part.chooser,
                "tester": part.tester,
                "payoffs": {p: m.entries.tolist() for p, m in part.payoffs.items()},
            }
            for part in spec.parts
        ],
    }


def game_from_json(obj) -> GameSpec:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        parts = tuple(
            GamePart(
                chooser=p["chooser"],
                tester=p["tester"],
                payoffs={name: PayoffMatrix(m) for name, m in p["payoffs"].items()},
            )
            for p in obj["parts"]
        )
        return GameSpec(
            players=tuple(obj["players"]),
            parts=parts,
            zero_sum=bool(obj.get("zero_sum", False)),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed game spec: {exc}") from exc
