"""Pairwise preference elicitation over a precomputed front with a Gaussian process.

The latent utility over normalized front vectors gets a zero-mean GP prior
with an RBF kernel; pairwise outcomes enter through a probit likelihood and
the posterior is approximated at the front points by a Laplace (Newton) fit.
Acquisition proposes the unqueried point with the highest expected improvement
over the current most-preferred point.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import norm

from .errors import SingularKernel
from .mograph import Vec
from .users import UserModel, utility

_GRAD_TOL = 1e-6
_MAX_NEWTON_ITERS = 100


@dataclass(frozen=True)
class GppeHyper:
    lengthscale: float = 0.3
    signal_variance: float = 1.0
    comparison_noise: float = 0.1
    jitter: float = 1e-8


DEFAULT_HYPER = GppeHyper()


@dataclass
class PreferenceDataset:
    """Normalized candidate points plus (winner, loser) comparison outcomes."""

    points: np.ndarray  # shape (n, m), scaled to the unit box
    comparisons: list[tuple[int, int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def queried(self) -> set[int]:
        out: set[int] = set()
        for w, l in self.comparisons:
            out.add(w)
            out.add(l)
        return out


@dataclass
class GpPosterior:
    mean: np.ndarray
    cov: np.ndarray
    hyper: GppeHyper


def rbf_kernel(points: np.ndarray, hyper: GppeHyper = DEFAULT_HYPER) -> np.ndarray:
    sq = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
    return hyper.signal_variance * np.exp(-sq / (2.0 * hyper.lengthscale**2))


def _inverse_with_jitter(k: np.ndarray, jitter: float) -> np.ndarray:
    n = k.shape[0]
    for scale in (1.0, 1e2, 1e4, 1e6):
        try:
            chol = np.linalg.cholesky(k + jitter * scale * np.eye(n))
            identity = np.eye(n)
            half = np.linalg.solve(chol, identity)
            return np.linalg.solve(chol.T, half)
        except np.linalg.LinAlgError:
            continue
    raise SingularKernel("kernel matrix not positive definite even with jitter")


def fit_posterior(
    data: PreferenceDataset, hyper: GppeHyper = DEFAULT_HYPER
) -> GpPosterior:
    """Laplace approximation of the latent utility under the probit pairwise likelihood."""
    if not data.comparisons:
        raise ValueError("at least one comparison is required")
    n = data.n
    k = rbf_kernel(data.points, hyper)
    k_inv = _inverse_with_jitter(k, hyper.jitter)
    scale = np.sqrt(2.0) * hyper.comparison_noise
    winners = np.array([w for w, _ in data.comparisons])
    losers = np.array([l for _, l in data.comparisons])

    def log_likelihood_terms(f: np.ndarray):
        z = (f[winners] - f[losers]) / scale
        log_cdf = norm.logcdf(z)
        # ratio pdf/cdf computed in log space; stable far into the tail
        ratio = np.exp(norm.logpdf(z) - log_cdf)
        return z, log_cdf, ratio

    def objective(f: np.ndarray) -> float:
        _, log_cdf, _ = log_likelihood_terms(f)
        return float(np.sum(log_cdf) - 0.5 * f @ k_inv @ f)

    f = np.zeros(n)
    for _ in range(_MAX_NEWTON_ITERS):
        z, _, ratio = log_likelihood_terms(f)
        grad_lik = np.zeros(n)
        np.add.at(grad_lik, winners, ratio / scale)
        np.add.at(grad_lik, losers, -ratio / scale)
        grad = grad_lik - k_inv @ f
        if np.max(np.abs(grad)) < _GRAD_TOL:
            break
        curvature = ratio * (z + ratio) / scale**2  # positive; likelihood is log-concave
        w = np.zeros((n, n))
        for c, (wi, li) in enumerate(data.comparisons):
            q = curvature[c]
            w[wi, wi] += q
            w[li, li] += q
            w[wi, li] -= q
            w[li, wi] -= q
        hessian = k_inv + w
        step = np.linalg.solve(hessian, grad)
        base = objective(f)
        step_size = 1.0
        while step_size > 1e-6 and objective(f + step_size * step) < base:
            step_size *= 0.5
        f = f + step_size * step

    z, _, ratio = log_likelihood_terms(f)
    curvature = ratio * (z + ratio) / scale**2
    w = np.zeros((n, n))
    for c, (wi, li) in enumerate(data.comparisons):
        q = curvature[c]
        w[wi, wi] += q
        w[li, li] += q
        w[wi, li] -= q
        w[li, wi] -= q
    cov = _inverse_with_jitter(k_inv + w, hyper.jitter)
    cov = 0.5 * (cov + cov.T)
    return GpPosterior(mean=f, cov=cov, hyper=hyper)


def expected_improvement(
    mean: float, variance: float, incumbent_mean: float
) -> float:
    sigma = float(np.sqrt(max(variance, 0.0)))
    improvement = mean - incumbent_mean
    if sigma < 1e-12:
        return max(improvement, 0.0)
    z = improvement / sigma
    return float(improvement * norm.cdf(z) + sigma * norm.pdf(z))


def acquire_next(
    posterior: GpPosterior, data: PreferenceDataset, incumbent: int
) -> int:
    """Unqueried point with the largest expected improvement over the incumbent.

    Falls back to the incumbent once every point has appeared in a comparison.
    """
    queried = data.queried()
    candidates = [i for i in range(data.n) if i not in queried]
    if not candidates:
        return incumbent
    reference = float(posterior.mean[incumbent])
    scores = [
        expected_improvement(
            float(posterior.mean[i]), float(posterior.cov[i, i]), reference
        )
        for i in candidates
    ]
    best = max(scores)
    return candidates[scores.index(best)]


def opening_pair(n: int) -> tuple[int, int]:
    """First proposals under the flat prior: the two median candidates.

    With no preference information every point ties on acquisition value, so
    the opener is a convention; starting from the middle of the (sorted)
    candidate list presents the balanced compromise routes first.
    """
    if n == 1:
        return 0, 0
    return n // 2 - 1, n // 2


@dataclass(frozen=True)
class ElicitationStep:
    query: int
    shown_index: int
    shown: Vec
    utility: float  # noisy utility of the solution presented at this query
    best_utility: float  # running maximum of presented utilities
    preferred_index: int
    fit_seconds: float = 0.0


def run_elicitation(
    front: Sequence[Vec],
    user: UserModel,
    budget: int,
    rng: np.random.Generator,
    hyper: GppeHyper = DEFAULT_HYPER,
) -> list[ElicitationStep]:
    """Full query loop: seed the model with one comparison of two front points,
    then acquire one point per query and compare it against the current
    most-preferred point.

    Produces exactly `budget` steps so curves line up query-for-query with the
    steering loop's accounting.
    """
    if not front:
        raise ValueError("front must not be empty")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    vectors = [tuple(float(x) for x in v) for v in front]
    raw = np.array(vectors, dtype=float)
    lo = raw.min(axis=0)
    hi = raw.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    data = PreferenceDataset(points=(raw - lo) / span)

    steps: list[ElicitationStep] = []
    first, second = opening_pair(data.n)

    def noisy(i: int) -> float:
        return utility(user, vectors[i], noisy=True, rng=rng)

    def judge(challenger: int, incumbent: int) -> int:
        ua = noisy(challenger)
        ub = noisy(incumbent)
        return challenger if ua >= ub else incumbent

    best_seen = -1.0
    preferred = judge(first, second)
    data.comparisons.append(
        (preferred, second if preferred == first else first)
    )
    fit_started = time.perf_counter()
    posterior = fit_posterior(data, hyper)
    fit_elapsed = time.perf_counter() - fit_started
    shown_utility = noisy(preferred)
    best_seen = max(best_seen, shown_utility)
    steps.append(
        ElicitationStep(
            query=1,
            shown_index=preferred,
            shown=vectors[preferred],
            utility=shown_utility,
            best_utility=best_seen,
            preferred_index=preferred,
            fit_seconds=fit_elapsed,
        )
    )

    for query in range(2, budget + 1):
        fit_started = time.perf_counter()
        candidate = acquire_next(posterior, data, preferred)
        acquisition_elapsed = time.perf_counter() - fit_started
        shown_utility = noisy(candidate)
        if candidate != preferred:
            winner = judge(candidate, preferred)
            loser = preferred if winner == candidate else candidate
            data.comparisons.append((winner, loser))
            preferred = winner
            fit_started = time.perf_counter()
            posterior = fit_posterior(data, hyper)
            acquisition_elapsed += time.perf_counter() - fit_started
        best_seen = max(best_seen, shown_utility)
        steps.append(
            ElicitationStep(
                query=query,
                shown_index=candidate,
                shown=vectors[candidate],
                utility=shown_utility,
                best_utility=best_seen,
                preferred_index=preferred,
                fit_seconds=acquisition_elapsed,
            )
        )
    return steps
