"""Seeded simulation of the games by sequentially applied dichotomous
(or n-ary) random generators.

Every generator owns a private PCG64 stream keyed by (seed, stream id,
partition), so trials can be split across partitions and merged in fixed
order while remaining bit-reproducible for identical (seed, trials,
partition count).  Sampling is inverse-CDF over the fixed outcome order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .frequency import TrialSequence
from .game import (
    GameAverages,
    GameSpec,
    PayoffMatrix,
    normalize_contexts,
    part_statistics,
    total_averages,
)
from .hilbert import OrthonormalBasis, is_unit
from .probability import Distribution, JointTable, ValidationError


@dataclass(frozen=True)
class GeneratorSpec:
    """One random generator: a distribution plus a stream label."""

    distribution: Distribution
    stream_id: str


def stream_rng(seed: int, stream_id: str, partition: int = 0) -> np.random.Generator:
    """Independent PCG64 stream for (seed, stream id, partition).

    The stream id is hashed (SHA-256) into seed words so that label choice,
    not Python's randomized ``hash``, determines the stream.
    """
    seed = int(seed)
    if seed < 0:
        raise ValidationError("seed must be a nonnegative integer")
    digest = hashlib.sha256(stream_id.encode("utf-8")).digest()
    words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
    return np.random.default_rng([seed, *words, int(partition)])


def _draw_indices(probs: np.ndarray, rng: np.random.Generator, n: int) -> np.ndarray:
    cum = np.cumsum(probs)
    idx = np.searchsorted(cum, rng.random(n), side="right")
    return np.minimum(idx, len(cum) - 1)


def sample_outcome(gen: GeneratorSpec, rng: np.random.Generator) -> str:
    """Draw one outcome label, advancing the stream by one variate."""
    k = int(_draw_indices(gen.distribution.probs, rng, 1)[0])
    return gen.distribution.alphabet[k]


def sample_outcomes(gen: GeneratorSpec, n: int, rng: np.random.Generator) -> TrialSequence:
    """Draw ``n`` outcomes as a trial sequence tagged with the stream id."""
    idx = _draw_indices(gen.distribution.probs, rng, n)
    labels = tuple(gen.distribution.alphabet[k] for k in idx)
    return TrialSequence(labels, context_tag=gen.stream_id)


def _partition_sizes(trials: int, partitions: int) -> list[int]:
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    if partitions < 1:
        raise ValidationError("partitions must be at least 1")
    base, extra = divmod(trials, partitions)
    return [base + (1 if p < extra else 0) for p in range(partitions)]


@dataclass(frozen=True, eq=False)
class SimulationReport:
    """Empirical joint counts and payoff averages against their analytic
    counterparts.  Counts are integers summing to ``trials`` per part."""

    trials: int
    seed: int
    partitions: int
    part_labels: tuple[tuple[str, str], ...]
    part_counts: tuple[np.ndarray, ...]
    empirical_joints: tuple[JointTable, ...]
    empirical_averages: GameAverages
    analytic_averages: GameAverages
    max_deviation: float


def _deviation(empirical: GameAverages, analytic: GameAverages) -> float:
    worst = 0.0
    for emp_part, ana_part in zip(empirical.part_averages, analytic.part_averages):
        for player, value in emp_part.items():
            worst = max(worst, abs(value - ana_part[player]))
    for player, value in empirical.totals.items():
        worst = max(worst, abs(value - analytic.totals[player]))
    return worst


def _simulate_part_counts(
    label: str,
    chooser_probs: np.ndarray,
    row_probs: np.ndarray,
    outcome_tags: tuple[str, ...],
    seed: int,
    sizes: list[int],
) -> np.ndarray:
    """Counts[chooser, answer] over all partitions, merged in fixed order.

    The chooser generator and each conditional answer generator consume
    their own streams, so the result equals a trial-by-trial sequential
    application of the generators in play order.
    """
    n = len(chooser_probs)
    counts = np.zeros((n, n), dtype=np.int64)
    for partition, size in enumerate(sizes):
        if size == 0:
            continue
        chooser_rng = stream_rng(seed, f"{label}:chooser", partition)
        chosen = _draw_indices(chooser_probs, chooser_rng, size)
        for alpha in range(n):
            m = int(np.count_nonzero(chosen == alpha))
            if m == 0:
                continue
            answer_rng = stream_rng(seed, f"{label}:answer|{outcome_tags[alpha]}", partition)
            answers = _draw_indices(row_probs[alpha], answer_rng, m)
            counts[alpha] += np.bincount(answers, minlength=n)
    return counts


def simulate_game(
    spec: GameSpec,
    contexts,
    trials: int,
    seed: int,
    partitions: int = 1,
) -> SimulationReport:
    """Play every part ``trials`` times: draw the chooser's outcome from the
    chooser marginal, then the tester's answer from the conditional
    generator selected by that outcome; accumulate payoffs and compare with
    the analytic averages."""
    pair_contexts = normalize_contexts(spec, contexts)
    sizes = _partition_sizes(trials, partitions)
    analytic = total_averages(spec, contexts)

    part_labels = []
    part_counts = []
    joints = []
    part_avgs = []
    for k, part in enumerate(spec.parts):
        marginal, trans = part_statistics(part, pair_contexts)
        label = f"part{k}:{part.chooser}>{part.tester}"
        counts = _simulate_part_counts(
            label, marginal.probs, trans.rows, marginal.alphabet, seed, sizes
        )
        freq = counts / trials
        part_labels.append((part.chooser, part.tester))
        part_counts.append(counts)
        joints.append(
            JointTable((part.chooser, part.tester), freq, marginal.alphabet)
        )
        part_avgs.append(
            {
                player: float(np.sum(payoff.entries * freq))
                for player, payoff in part.payoffs.items()
            }
        )
    empirical = GameAverages.from_parts(part_avgs, spec.players)
    return SimulationReport(
        trials=trials,
        seed=seed,
        partitions=partitions,
        part_labels=tuple(part_labels),
        part_counts=tuple(part_counts),
        empirical_joints=tuple(joints),
        empirical_averages=empirical,
        analytic_averages=analytic,
        max_deviation=_deviation(empirical, analytic),
    )


def simulate_multidim(
    psi,
    a_basis: OrthonormalBasis,
    b_basis: OrthonormalBasis,
    payoff_part1,
    payoff_part2,
    trials: int,
    seed: int,
    partitions: int = 1,
) -> SimulationReport:
    """Simulate the n-dimensional two-part game with generator
    distributions taken from the squared inner products of the state and
    bases; the empirical tester average converges to the analytic double
    sum."""
    psi = np.asarray(psi, dtype=complex)
    if not is_unit(psi):
        raise ValidationError(f"psi has norm {np.linalg.norm(psi):.12g}, expected 1")
    h1 = payoff_part1.entries if isinstance(payoff_part1, PayoffMatrix) else np.asarray(payoff_part1, float)
    h2 = payoff_part2.entries if isinstance(payoff_part2, PayoffMatrix) else np.asarray(payoff_part2, float)
    n = psi.size
    if a_basis.dimension != n or b_basis.dimension != n:
        raise ValidationError("bases must match the state dimension")
    sizes = _partition_sizes(trials, partitions)

    unit = psi / np.linalg.norm(psi)
    born_a = np.abs(a_basis.vectors.conj() @ unit) ** 2
    born_b = np.abs(b_basis.vectors.conj() @ unit) ** 2
    overlap = np.abs(b_basis.vectors @ a_basis.vectors.conj().T) ** 2  # [i, j]

    tags = tuple(str(k) for k in range(n))
    counts1 = _simulate_part_counts(
        "multidim:part1", born_a, overlap.T, tags, seed, sizes
    )
    counts2 = _simulate_part_counts(
        "multidim:part2", born_b, overlap, tags, seed, sizes
    )
    analytic1 = float(np.sum(h1 * (born_a[:, None] * overlap.T)))
    analytic2 = float(np.sum(h2 * (born_b[:, None] * overlap)))
    empirical1 = float(np.sum(h1 * counts1 / trials))
    empirical2 = float(np.sum(h2 * counts2 / trials))

    players = ("b",)
    empirical = GameAverages.from_parts(({"b": empirical1}, {"b": empirical2}), players)
    analytic = GameAverages.from_parts(({"b": analytic1}, {"b": analytic2}), players)
    alphabet = tuple(f"o{k}" for k in range(n))
    joints = tuple(
        JointTable(order, counts / trials, alphabet)
        for order, counts in ((("a", "b"), counts1), (("b", "a"), counts2))
    )
    return SimulationReport(
        trials=trials,
        seed=seed,
        partitions=partitions,
        part_labels=(("a", "b"), ("b", "a")),
        part_counts=(counts1, counts2),
        empirical_joints=joints,
        empirical_averages=empirical,
        analytic_averages=analytic,
        max_deviation=_deviation(empirical, analytic),
    )


def report_to_json(report: SimulationReport) -> dict:
    return {
        "trials": report.trials,
        "seed": report.seed,
        "partitions": report.partitions,
        "parts": [
            {
                "chooser": chooser,
                "tester": tester,
                "counts": counts.tolist(),
                "empirical_joint": joint.entries.tolist(),
                "empirical_averages": averages,
            }
            for (chooser, tester), counts, joint, averages in zip(
                report.part_labels,
                report.part_counts,
                report.empirical_joints,
                report.empirical_averages.part_averages,
            )
        ],
        "empirical_totals": report.empirical_averages.totals,
        "analytic_parts": list(report.analytic_averages.part_averages),
        "analytic_totals": report.analytic_averages.totals,
        "max_deviation": report.max_deviation,
    }
