"""Command-line entry point: front enumeration, terminal sessions, benchmarks, serving."""
from __future__ import annotations

import json
import sys
from pathlib import Path as FsPath

import click

from .errors import PgIproError
from .experiments import (
    BenchmarkConfig,
    emit_results,
    parse_scenario,
    run_benchmark,
    verify_fixture,
)
from .fixtures import osdorp_path
from .ipro import enumerate_front, write_front_csv
from .mograph import load_graph
from .session import (
    SteerRequest,
    close_session,
    record_comparison,
    start_session,
    steer,
    transcript_events,
)

_GUIDANCE = click.Choice(["manhattan", "chebyshev"])
_HEURISTIC = click.Choice(["closest", "middle"])


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Interactive multi-objective route search."""


def _fail(message: str) -> "click.exceptions.Exit":
    click.echo(f"error: {message}", err=True)
    return click.exceptions.Exit(1)


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Graph document (JSON).")
@click.option("--source", required=True, help="Source node id.")
@click.option("--target", required=True, help="Target node id.")
@click.option("--tau", type=float, default=0.0, show_default=True, help="Approximation tolerance; 0 enumerates the exact front.")
@click.option("--guidance", type=_GUIDANCE, default="chebyshev", show_default=True, help="Scalarization steering the oracle's exploration order.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Write the CSV here instead of standard output.")
def front(graph_path: str, source: str, target: str, tau: float, guidance: str, out_path: str | None) -> None:
    """Enumerate the Pareto front of a graph instance and emit it as CSV."""
    try:
        g = load_graph(FsPath(graph_path))
        result = enumerate_front(g, source, target, tau, guidance)  # type: ignore[arg-type]
        if out_path is None:
            write_front_csv(result, sys.stdout)
        else:
            with open(out_path, "w", encoding="utf-8") as handle:
                write_front_csv(result, handle)
    except PgIproError as exc:
        raise _fail(str(exc))


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Graph document (JSON).")
@click.option("--source", required=True, help="Source node id.")
@click.option("--target", required=True, help="Target node id.")
@click.option("--heuristic", type=_HEURISTIC, default="middle", show_default=True, help="Referent selection heuristic.")
@click.option("--guidance", type=_GUIDANCE, default="chebyshev", show_default=True, help="Oracle scalarization.")
@click.option("--transcript", "transcript_path", type=click.Path(dir_okay=False), default=None, help="Write the interaction transcript (JSON) here on exit.")
def session(graph_path: str, source: str, target: str, heuristic: str, guidance: str, transcript_path: str | None) -> None:
    """Steer a route interactively in the terminal.

    Each round asks which objective to improve (or relax), fetches one new
    Pareto-optimal route, and asks whether to keep it or stay with the best
    so far.
    """
    try:
        g = load_graph(FsPath(graph_path))
        live = start_session(g, source, target, heuristic, guidance)  # type: ignore[arg-type]
    except PgIproError as exc:
        raise _fail(str(exc))

    names = [name for name, _ in live.objective_meta]
    units = [unit for _, unit in live.objective_meta]

    def show(label: str, value) -> None:
        parts = [
            f"{names[i]} = {value[i]:g}{(' ' + units[i]) if units[i] else ''}"
            for i in range(len(value))
        ]
        click.echo(f"{label}: " + ", ".join(parts))

    show("proposed route", live.current[0])
    prompt_options = ", ".join(f"{i}={names[i]}" for i in range(live.m))
    while live.status == "active":
        raw = click.prompt(
            f"objective to improve ({prompt_options}; r<i> relaxes; q quits)",
            default="q",
            show_default=False,
        ).strip().lower()
        if raw == "q":
            break
        direction = "improve"
        if raw.startswith("r"):
            direction = "relax"
            raw = raw[1:]
        try:
            objective = int(raw)
        except ValueError:
            click.echo("please answer with an objective index, r<i>, or q", err=True)
            continue
        if not 0 <= objective < live.m:
            click.echo(f"objective must be between 0 and {live.m - 1}", err=True)
            continue
        outcome = steer(live, SteerRequest(objective, direction))  # type: ignore[arg-type]
        if outcome.status == "exhausted":
            click.echo("no further improvement is possible in that direction")
            break
        assert outcome.candidate is not None
        show("candidate", outcome.candidate[0])
        show("best so far", live.best[0])
        deltas = [outcome.candidate[0][i] - live.best[0][i] for i in range(live.m)]
        click.echo(
            "deltas vs best: "
            + ", ".join(f"{names[i]} {deltas[i]:+g}" for i in range(live.m))
        )
        answer = click.prompt("keep (c)andidate or (b)est", default="c", show_default=False).strip().lower()
        record_comparison(live, "current" if answer.startswith("c") else "best")

    best_value, best_path = close_session(live)
    show("final route", best_value)
    click.echo("via " + "|".join(best_path.nodes))
    if transcript_path is not None:
        FsPath(transcript_path).write_text(
            json.dumps(transcript_events(live), indent=2), encoding="utf-8"
        )


@main.command()
@click.option("--scenario", required=True, help="convex, concave, or graph:<file>:<source>:<target>.")
@click.option("--methods", default="pgipro,gppe", show_default=True, help="Comma-separated subset of pgipro,gppe.")
@click.option("--trials", type=int, default=50, show_default=True, help="Number of simulated users.")
@click.option("--queries", type=int, default=6, show_default=True, help="Queries per simulated user.")
@click.option("--noise", type=float, default=0.01, show_default=True, help="Utility noise standard deviation.")
@click.option("--seed", type=int, default=0, show_default=True, help="Base seed; trial t uses seed+t.")
@click.option("--heuristic", type=_HEURISTIC, default="middle", show_default=True, help="Referent selection heuristic.")
@click.option("--guidance", type=_GUIDANCE, default="chebyshev", show_default=True, help="Oracle scalarization.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="Directory for curves.csv, timing.csv and curves.svg.")
def bench(
    scenario: str,
    methods: str,
    trials: int,
    queries: int,
    noise: float,
    seed: int,
    heuristic: str,
    guidance: str,
    out_dir: str,
) -> None:
    """Benchmark steering against the preference-learning baseline."""
    method_list = tuple(m.strip() for m in methods.split(",") if m.strip())
    try:
        config = BenchmarkConfig(
            scenario=parse_scenario(scenario),
            methods=method_list,
            trials=trials,
            queries=queries,
            noise_sigma=noise,
            base_seed=seed,
            heuristic=heuristic,  # type: ignore[arg-type]
            guidance=guidance,  # type: ignore[arg-type]
        )
        result = run_benchmark(config)
        paths = emit_results(result, out_dir)
    except (PgIproError, ValueError) as exc:
        raise _fail(str(exc))
    for kind, path in paths.items():
        click.echo(f"{kind}: {path}")


@main.command("fixture-verify")
def fixture_verify() -> None:
    """Re-derive the bundled instance's front by exhaustive enumeration and check it."""
    failed = False
    for name, ok, detail in verify_fixture():
        click.echo(f"{'PASS' if ok else 'FAIL'}: {name} ({detail})")
        failed = failed or not ok
    if failed:
        raise click.exceptions.Exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, help="Listen address.")
@click.option("--port", type=int, default=8000, show_default=True, help="Listen port.")
@click.option("--session-ttl", type=float, default=3600.0, show_default=True, help="Idle session lifetime in seconds.")
@click.option("--max-sessions", type=int, default=1000, show_default=True, help="Concurrent session cap.")
@click.option("--oracle-budget", type=float, default=30.0, show_default=True, help="Per-request oracle time budget in seconds.")
@click.option("--transcript-log", type=click.Path(dir_okay=False), default="pgipro-transcripts.jsonl", show_default=True, help="Append-only JSON-lines file for closed-session transcripts.")
@click.option("--preload-fixture/--no-preload-fixture", default=True, show_default=True, help="Register the bundled instance under graph id 'osdorp'.")
def serve(
    host: str,
    port: int,
    session_ttl: float,
    max_sessions: int,
    oracle_budget: float,
    transcript_log: str,
    preload_fixture: bool,
) -> None:
    """Run the HTTP session service (and the web client, when built)."""
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        session_ttl_seconds=session_ttl,
        max_sessions=max_sessions,
        oracle_budget_seconds=oracle_budget,
        transcript_log=FsPath(transcript_log) if transcript_log else None,
    )
    app = create_app(config)
    if preload_fixture:
        from .service import register_graph

        register_graph(app, load_graph(osdorp_path()), graph_id="osdorp")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
