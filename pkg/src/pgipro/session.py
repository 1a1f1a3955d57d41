"""Interactive steering loop: referent selection, one steering step, session lifecycle.

A session owns a partition state and a single-route oracle. Each steering step
filters the unexplored regions down to those guaranteeing improvement in the
user's chosen objective, picks one referent by heuristic, queries the oracle
(retrying quietly on infeasible referents), and stages the new route for a
pairwise comparison with the best route so far.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

from .errors import (
    NoPendingCandidate,
    PendingComparison,
    SessionClosed,
)
from .ipro import (
    IproState,
    absorb_solution,
    init_phase,
    update_partition,
)
from .mograph import MultiObjectiveGraph, Path, Vec, reverse_lower_bounds
from .oracle import (
    GuidanceKind,
    OracleOutcome,
    SolveDiagnostics,
    mode_for_region,
    solve_region,
)
from .pareto import Region

Heuristic = Literal["closest", "middle"]
Direction = Literal["improve", "relax"]

OracleFn = Callable[[Region], OracleOutcome]


@dataclass(frozen=True)
class SteerRequest:
    objective: int
    direction: Direction = "improve"


@dataclass
class InteractionEvent:
    kind: str  # initial_proposal | steer | comparison | exhausted | exit
    payload: dict
    timestamp: float
    oracle_seconds: float | None = None


@dataclass(frozen=True)
class StepOutcome:
    status: Literal["candidate", "exhausted"]
    candidate: tuple[Vec, Path] | None
    best: tuple[Vec, Path]
    oracle_seconds: float = 0.0
    infeasible_retries: int = 0


@dataclass
class Session:
    state: IproState
    oracle: OracleFn
    heuristic: Heuristic
    guidance: GuidanceKind
    current: tuple[Vec, Path]
    best: tuple[Vec, Path]
    objective_meta: tuple[tuple[str, str], ...]
    status: Literal["active", "exhausted", "closed"] = "active"
    pending: bool = False
    transcript: list[InteractionEvent] = field(default_factory=list)
    oracle_call_seconds: list[float] = field(default_factory=list)
    diagnostics: SolveDiagnostics = field(default_factory=SolveDiagnostics)
    presented: set[Vec] = field(default_factory=set)
    _last_timestamp: float = 0.0

    @property
    def m(self) -> int:
        return self.state.m

    def _record(
        self, kind: str, payload: dict, oracle_seconds: float | None = None
    ) -> None:
        now = max(self._last_timestamp, time.time())
        self._last_timestamp = now
        self.transcript.append(InteractionEvent(kind, payload, now, oracle_seconds))


def _timed_oracle(session: Session, region: Region) -> tuple[OracleOutcome, float]:
    started = time.perf_counter()
    outcome = session.oracle(region)
    elapsed = time.perf_counter() - started
    session.oracle_call_seconds.append(elapsed)
    return outcome, elapsed


def _found_entry(state: IproState, value: Vec) -> tuple[Vec, Path]:
    for v, p in state.found:
        if v == value:
            return v, p
    raise AssertionError(f"value {value} missing from found set")


InitialProposal = Literal["extreme", "oracle"]


def bootstrap_session(
    state: IproState,
    oracle: OracleFn,
    heuristic: Heuristic,
    guidance: GuidanceKind,
    objective_meta: tuple[tuple[str, str], ...],
    diag: SolveDiagnostics | None = None,
    initial: InitialProposal = "extreme",
) -> Session:
    """Wrap an initialized partition and stage the opening proposal.

    The default opener is the first-objective extreme solution (already known
    from initialization, so it costs nothing); "oracle" instead asks the
    oracle for one solution inside the full initial region.
    """
    session = Session(
        state=state,
        oracle=oracle,
        heuristic=heuristic,
        guidance=guidance,
        current=state.found[0],
        best=state.found[0],
        objective_meta=objective_meta,
        diagnostics=diag if diag is not None else SolveDiagnostics(),
    )
    if initial == "oracle":
        assert state.bounding_box is not None
        outcome, elapsed = _timed_oracle(session, state.bounding_box)
        # The bounding box always admits a solution: the extremes sit strictly
        # below the inflated nadir, so a reachable target implies feasibility.
        assert outcome.path is not None
        entry = absorb_solution(state, outcome.path)
    else:
        elapsed = 0.0
        entry = _found_entry(state, state.extreme(0))
    session.current = entry
    session.best = entry
    session.presented.add(entry[0])
    session._record(
        "initial_proposal",
        {"value": list(entry[0]), "nodes": list(entry[1].nodes)},
        oracle_seconds=elapsed,
    )
    return session


def start_session(
    g: MultiObjectiveGraph,
    source: str,
    target: str,
    heuristic: Heuristic = "middle",
    guidance: GuidanceKind = "chebyshev",
    *,
    oracle_deadline: float | None = None,
    initial: InitialProposal = "extreme",
) -> Session:
    """Build a graph-backed session using the depth-first search oracle."""
    state = init_phase(g, source, target)
    tables = [reverse_lower_bounds(g, target, i) for i in range(g.m)]
    diag = SolveDiagnostics()

    def oracle(region: Region) -> OracleOutcome:
        return solve_region(
            g,
            source,
            target,
            region,
            mode_for_region(region, guidance),
            tables,
            diag=diag,
            deadline_seconds=oracle_deadline,
        )

    return bootstrap_session(
        state, oracle, heuristic, guidance, g.objective_meta, diag, initial=initial
    )


def improving_referents(
    referents: Sequence[Region], s: Vec, objective: int, direction: Direction = "improve"
) -> list[Region]:
    """Referents guaranteeing movement in the requested direction for one objective.

    Improving referents have their cost-space image at or below the current
    value in that objective, so any strict success must undercut it; relaxing
    keeps the complement.
    """
    if direction == "improve":
        return [r for r in referents if r.upper[objective] <= s[objective]]
    return [r for r in referents if r.upper[objective] > s[objective]]


def _heuristic_key(
    region: Region, s: Vec, heuristic: Heuristic, reference: Vec
) -> tuple[float, Vec]:
    if heuristic == "closest":
        anchor = s
    else:
        anchor = tuple((o + x) / 2.0 for o, x in zip(reference, s))
    distance = sum(abs(u - a) for u, a in zip(region.upper, anchor))
    return (distance, region.upper)


def ranked_referents(
    candidates: Sequence[Region],
    s: Vec,
    heuristic: Heuristic,
    reference: Vec,
) -> list[Region]:
    return sorted(candidates, key=lambda r: _heuristic_key(r, s, heuristic, reference))


def select_referent(
    candidates: Sequence[Region],
    s: Vec,
    objective: int,
    heuristic: Heuristic,
    extreme: Vec,
) -> Region | None:
    """Closest-distance picks the referent nearest the current value (L1);
    middle-distance aims halfway toward the extreme solution for the chosen
    objective. Ties break on the lexicographically smallest upper corner."""
    ranked = ranked_referents(candidates, s, heuristic, extreme)
    return ranked[0] if ranked else None


def _relax_reference(state: IproState, objective: int) -> Vec:
    """Componentwise best over the extremes of the objectives the user protects."""
    others = [state.extreme(j) for j in range(state.m) if j != objective]
    return tuple(min(e[i] for e in others) for i in range(state.m))


def _known_unshown(
    session: Session, s: Vec, objective: int, direction: Direction, reference: Vec
) -> tuple[Vec, Path] | None:
    """Best already-found solution the user has never seen that moves objective i.

    Steering mines unexplored regions first; once those fail, a solution found
    earlier (an initialization extreme, typically) may still satisfy the
    request and is presented instead of falsely reporting a dead end.
    """
    if direction == "improve":
        pool = [e for e in session.state.found if e[0][objective] < s[objective]]
    else:
        pool = [e for e in session.state.found if e[0][objective] > s[objective]]
    pool = [e for e in pool if e[0] not in session.presented]
    if not pool:
        return None
    if session.heuristic == "closest":
        anchor = s
    else:
        anchor = tuple((o + x) / 2.0 for o, x in zip(reference, s))
    return min(
        pool,
        key=lambda e: (sum(abs(v - a) for v, a in zip(e[0], anchor)), e[0]),
    )


def steer(session: Session, request: SteerRequest) -> StepOutcome:
    """One steering step; infeasible referents are retried invisibly in heuristic order."""
    if session.status != "active":
        raise SessionClosed(f"session is {session.status}")
    if session.pending:
        raise PendingComparison("answer the pending comparison before steering again")
    if not 0 <= request.objective < session.m:
        raise ValueError(
            f"objective index {request.objective} out of range for m={session.m}"
        )

    s = session.current[0]
    if request.direction == "improve":
        reference = session.state.extreme(request.objective)
    else:
        reference = _relax_reference(session.state, request.objective)
    candidates = improving_referents(
        session.state.regions, s, request.objective, request.direction
    )
    ranked = ranked_referents(candidates, s, session.heuristic, reference)

    retries = 0
    total_seconds = 0.0
    entry: tuple[Vec, Path] | None = None
    for region in ranked:
        outcome, elapsed = _timed_oracle(session, region)
        total_seconds += elapsed
        update_partition(session.state, region, outcome)
        if not outcome.feasible:
            retries += 1
            continue
        assert outcome.path is not None
        entry = _found_entry(session.state, outcome.path.value)
        break
    if entry is None:
        entry = _known_unshown(session, s, request.objective, request.direction, reference)
    if entry is not None:
        session.current = entry
        session.pending = True
        session.presented.add(entry[0])
        session._record(
            "steer",
            {
                "objective": request.objective,
                "direction": request.direction,
                "value": list(entry[0]),
                "nodes": list(entry[1].nodes),
                "infeasible_retries": retries,
            },
            oracle_seconds=total_seconds,
        )
        return StepOutcome(
            status="candidate",
            candidate=entry,
            best=session.best,
            oracle_seconds=total_seconds,
            infeasible_retries=retries,
        )

    session.status = "exhausted"
    session._record(
        "exhausted",
        {
            "objective": request.objective,
            "direction": request.direction,
            "message": "no further improvement is possible",
        },
        oracle_seconds=total_seconds,
    )
    return StepOutcome(
        status="exhausted",
        candidate=None,
        best=session.best,
        oracle_seconds=total_seconds,
        infeasible_retries=retries,
    )


def record_comparison(
    session: Session, preferred: Literal["current", "best"]
) -> Session:
    """Resolve the staged comparison; preferring the candidate promotes it to best."""
    if not session.pending:
        raise NoPendingCandidate("no fresh candidate to compare")
    if preferred == "current":
        session.best = session.current
    session.pending = False
    session._record(
        "comparison",
        {"preferred": preferred, "best_value": list(session.best[0])},
    )
    return session


def close_session(session: Session) -> tuple[Vec, Path]:
    """Terminal and idempotent; returns the most-preferred route."""
    if session.status != "closed":
        session.status = "closed"
        session.pending = False
        session._record("exit", {"best_value": list(session.best[0])})
    return session.best


def transcript_events(session: Session) -> list[dict]:
    """JSON-ready transcript for replay and benchmark post-processing."""
    out = []
    for event in session.transcript:
        entry: dict = {
            "kind": event.kind,
            "payload": event.payload,
            "timestamp": event.timestamp,
        }
        if event.oracle_seconds is not None:
            entry["oracle_seconds"] = event.oracle_seconds
        out.append(entry)
    return out
