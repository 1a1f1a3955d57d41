"""Simulated decision-makers with latent utility over cost vectors.

A user is a weighted sum of monotonically decreasing sigmoid stacks, one stack
per objective, evaluated on min-max normalized costs. Comparisons are answered
with independent Gaussian noise on each side; the objective-choice query is
answered noiselessly from the utility gain of a small probe step.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

Vec = tuple[float, ...]

PROBE_STEP = 0.05

Preference = Literal["a", "b"]


def _logistic(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


@dataclass(frozen=True)
class UserModel:
    """Immutable preference model; draws come from a caller-supplied stream."""

    weights: Vec
    sigmoids: tuple[tuple[tuple[float, float], ...], ...]  # per objective: (center, steepness)
    noise_sigma: float
    normalization: tuple[tuple[float, float], ...]  # per objective: (best, worst)
    seed: int | None = None

    @property
    def m(self) -> int:
        return len(self.weights)

    def with_normalization(
        self, best: Sequence[float], worst: Sequence[float]
    ) -> "UserModel":
        return replace(
            self,
            normalization=tuple(
                (float(lo), float(hi)) for lo, hi in zip(best, worst)
            ),
        )


def sample_user(m: int, seed: int, noise_sigma: float = 0.01) -> UserModel:
    """Draw a random user: Dirichlet weights, 1-3 sigmoids per objective."""
    if m < 2:
        raise ValueError(f"at least 2 objectives required, got {m}")
    rng = np.random.default_rng(seed)
    weights = tuple(float(w) for w in rng.dirichlet(np.ones(m)))
    sigmoids = []
    for _ in range(m):
        k = int(rng.integers(1, 4))
        centers = rng.uniform(0.0, 1.0, k)
        steepness = rng.uniform(5.0, 20.0, k)
        sigmoids.append(tuple((float(c), float(s)) for c, s in zip(centers, steepness)))
    return UserModel(
        weights=weights,
        sigmoids=tuple(sigmoids),
        noise_sigma=float(noise_sigma),
        normalization=tuple((0.0, 1.0) for _ in range(m)),
        seed=seed,
    )


def _normalized(user: UserModel, v: Sequence[float]) -> list[float]:
    out = []
    for x, (lo, hi) in zip(v, user.normalization):
        span = hi - lo
        t = 0.0 if span == 0 else (x - lo) / span
        out.append(min(1.0, max(0.0, t)))
    return out


def utility(
    user: UserModel,
    v: Sequence[float],
    noisy: bool = False,
    rng: np.random.Generator | None = None,
) -> float:
    """Latent satisfaction in [0, 1]; optionally with clamped Gaussian noise."""
    total = 0.0
    for w, stack, t in zip(user.weights, user.sigmoids, _normalized(user, v)):
        component = sum(_logistic(steep * (center - t)) for center, steep in stack)
        total += w * component / len(stack)
    if noisy:
        if rng is None:
            rng = np.random.default_rng(user.seed)
        total += float(rng.normal(0.0, user.noise_sigma))
        total = min(1.0, max(0.0, total))
    return total


def compare(
    user: UserModel,
    a: Sequence[float],
    b: Sequence[float],
    rng: np.random.Generator | None = None,
) -> Preference:
    """Noisy pairwise judgment; exact ties go to the first side."""
    if rng is None:
        rng = np.random.default_rng(user.seed)
    ua = utility(user, a, noisy=True, rng=rng)
    ub = utility(user, b, noisy=True, rng=rng)
    return "a" if ua >= ub else "b"


def probe_gains(user: UserModel, current: Sequence[float]) -> list[float]:
    """Noiseless utility gain of improving each objective by a 5% probe step."""
    base = utility(user, current)
    gains = []
    for i, (lo, hi) in enumerate(user.normalization):
        probe = list(current)
        probe[i] = min(hi, max(lo, probe[i] - PROBE_STEP * (hi - lo)))
        gains.append(utility(user, probe) - base)
    return gains


def choose_objective(user: UserModel, current: Sequence[float]) -> int:
    """Answer "which objective should improve?": the largest probe gain, ties to the lowest index."""
    gains = probe_gains(user, current)
    best = max(gains)
    return gains.index(best)


def user_to_json(user: UserModel) -> str:
    return json.dumps(
        {
            "weights": list(user.weights),
            "sigmoids": [[list(pair) for pair in stack] for stack in user.sigmoids],
            "noise_sigma": user.noise_sigma,
            "normalization": [list(pair) for pair in user.normalization],
            "seed": user.seed,
        },
        sort_keys=True,
    )


def user_from_json(text: str) -> UserModel:
    doc = json.loads(text)
    return UserModel(
        weights=tuple(doc["weights"]),
        sigmoids=tuple(
            tuple((float(c), float(s)) for c, s in stack) for stack in doc["sigmoids"]
        ),
        noise_sigma=float(doc["noise_sigma"]),
        normalization=tuple((float(lo), float(hi)) for lo, hi in doc["normalization"]),
        seed=doc["seed"],
    )
