import io
import random

import pytest

from pgipro.errors import InvalidOracleResult, Unreachable, UnknownRegion
from pgipro.experiments import brute_force_front
from pgipro.fixtures import OSDORP_FRONT, OSDORP_SOURCE, OSDORP_TARGET, load_osdorp
from pgipro.ipro import (
    IproState,
    enumerate_front,
    error_estimate,
    init_phase,
    select_largest_region,
    update_partition,
    write_front_csv,
)
from pgipro.mograph import Path, reverse_lower_bounds
from pgipro.oracle import OracleOutcome, solve_region
from pgipro.pareto import Region, pareto_dominates, strictly_below

from helpers import build_graph, chain_graph, random_graph


def state_with_single_region(lower=(0.0, 0.0), upper=(10.0, 10.0)):
    box = Region(lower, upper)
    return IproState(
        ideal=lower,
        nadir_estimate=upper,
        raw_nadir=upper,
        tau=0.0,
        regions=[box],
        bounding_box=box,
    )


def total_area(regions):
    return sum(r.volume() for r in regions)


class TestInitPhase:
    def test_fixture_ideal_extremes_and_raw_nadir(self):
        g = load_osdorp()
        state = init_phase(g, OSDORP_SOURCE, OSDORP_TARGET)
        assert state.ideal == (568.0, 2.0)
        assert state.raw_nadir == (1335.0, 8.0)
        assert sorted(state.found_values()) == [(568.0, 8.0), (1335.0, 2.0)]
        assert len(state.regions) == 1
        region = state.regions[0]
        assert region.lower == (568.0, 2.0)
        assert region.upper == (1335.0, 8.0)

    def test_nadir_inflation(self):
        g = load_osdorp()
        state = init_phase(g, OSDORP_SOURCE, OSDORP_TARGET)
        assert state.nadir_estimate == pytest.approx(
            (1335.0 * 1.01 + 1e-6, 8.0 * 1.01 + 1e-6)
        )

    def test_single_path_graph_degenerate(self):
        g = chain_graph([[2.0, 2.0], [3.0, 3.0]])
        state = init_phase(g, "n0", "n2")
        assert state.ideal == (5.0, 5.0)
        assert state.raw_nadir == (5.0, 5.0)
        assert state.regions == []
        assert state.found_values() == [(5.0, 5.0)]

    def test_unreachable(self):
        g = build_graph(["a", "b", "c"], [("a", "b", [1.0, 1.0])])
        with pytest.raises(Unreachable):
            init_phase(g, "a", "c")

    def test_ideal_matches_bruteforce_on_random_graphs(self):
        rng = random.Random(3)
        for _ in range(20):
            g, src, dst = random_graph(rng, rng.randint(4, 10), 2)
            state = init_phase(g, src, dst)
            values = [v for v, _ in brute_force_front(g, src, dst)]
            for i in range(2):
                assert state.ideal[i] == min(v[i] for v in values)


class TestUpdatePartition:
    def test_two_objective_success_split(self):
        state = state_with_single_region()
        region = state.regions[0]
        outcome = OracleOutcome.success(Path(("s", "t"), (4.0, 6.0)))
        update_partition(state, region, outcome)
        assert Region((0.0, 6.0), (4.0, 10.0)) in state.regions
        assert Region((4.0, 0.0), (10.0, 6.0)) in state.regions
        assert len(state.regions) == 2
        assert Region((4.0, 6.0), (10.0, 10.0)) in state.dominated_volume
        assert Region((0.0, 0.0), (4.0, 6.0)) in state.infeasible_volume

    def test_infeasible_moves_region(self):
        state = state_with_single_region()
        region = state.regions[0]
        update_partition(state, region, OracleOutcome.infeasible())
        assert state.regions == []
        assert state.infeasible_volume == [region]
        assert state.found == []

    def test_boundary_value_rejected(self):
        state = state_with_single_region()
        region = state.regions[0]
        with pytest.raises(InvalidOracleResult):
            update_partition(
                state, region, OracleOutcome.success(Path(("s",), (4.0, 10.0)))
            )

    def test_unknown_region(self):
        state = state_with_single_region()
        other = Region((0.0, 0.0), (1.0, 1.0))
        with pytest.raises(UnknownRegion):
            update_partition(state, other, OracleOutcome.infeasible())

    def test_area_conserved_across_updates(self):
        state = state_with_single_region()
        box_area = state.bounding_box.volume()
        for value in [(4.0, 6.0), (2.0, 8.0), (7.0, 3.0)]:
            region = next(
                r for r in state.regions if strictly_below(value, r.upper)
            )
            update_partition(
                state, region, OracleOutcome.success(Path(("s",), value))
            )
            covered = (
                total_area(state.regions)
                + total_area(state.dominated_volume)
                + total_area(state.infeasible_volume)
            )
            assert covered == pytest.approx(box_area, rel=1e-9)


class TestErrorEstimate:
    def test_empty_regions(self):
        state = state_with_single_region()
        state.regions = []
        assert error_estimate(state) == 0.0

    def test_single_region_diameter(self):
        state = state_with_single_region((0.0, 0.0), (4.0, 10.0))
        assert error_estimate(state) == 10.0

    def test_fixture_run_to_zero(self):
        g = load_osdorp()
        front = enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, 0.0)
        assert front  # enumeration completed, so the estimate reached zero

    def test_monotone_nonincreasing_during_enumeration(self):
        g = load_osdorp()
        estimates = []
        enumerate_front(
            g,
            OSDORP_SOURCE,
            OSDORP_TARGET,
            0.0,
            on_update=lambda st: estimates.append(error_estimate(st)),
        )
        assert estimates == sorted(estimates, reverse=True)


class TestEnumerateFront:
    def test_fixture_front_exact(self):
        g = load_osdorp()
        front = enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, 0.0)
        assert [v for v, _ in front] == sorted(OSDORP_FRONT)

    def test_single_edge_graph(self):
        g = build_graph(["a", "b"], [("a", "b", [3.0, 1.0])])
        front = enumerate_front(g, "a", "b", 0.0)
        assert len(front) == 1
        value, path = front[0]
        assert value == (3.0, 1.0)
        assert path.nodes == ("a", "b")

    def test_parallel_edges_participate_in_search(self):
        g = build_graph(
            ["a", "b"], [("a", "b", [1.0, 5.0]), ("a", "b", [5.0, 1.0])]
        )
        front = enumerate_front(g, "a", "b", 0.0)
        assert [v for v, _ in front] == [(1.0, 5.0), (5.0, 1.0)]

    @pytest.mark.parametrize("m", [2, 3])
    def test_matches_bruteforce_on_random_graphs(self, m):
        rng = random.Random(17 + m)
        for _ in range(15):
            g, src, dst = random_graph(rng, rng.randint(4, 12), m)
            expected = [v for v, _ in brute_force_front(g, src, dst)]
            got = [v for v, _ in enumerate_front(g, src, dst, 0.0)]
            assert got == expected

    def test_positive_tau_keeps_guarantee(self):
        g = load_osdorp()
        tau = 3.0
        front = enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, tau)
        got = [v for v, _ in front]
        for v in OSDORP_FRONT:
            assert any(max(abs(a - b) for a, b in zip(v, w)) <= tau for w in got)

    def test_anytime_prefix_is_pareto_optimal(self):
        g = load_osdorp()
        front_set = set(OSDORP_FRONT)
        snapshots = []
        enumerate_front(
            g,
            OSDORP_SOURCE,
            OSDORP_TARGET,
            0.0,
            on_update=lambda st: snapshots.append(list(st.found_values())),
        )
        for found in snapshots:
            assert set(found) <= front_set
        sizes = [len(f) for f in snapshots]
        assert sizes == sorted(sizes)

    def test_volume_conservation_on_random_graphs(self):
        rng = random.Random(41)
        for _ in range(10):
            g, src, dst = random_graph(rng, rng.randint(4, 9), 2)
            state = init_phase(g, src, dst)
            box_area = state.bounding_box.volume()
            tables = [reverse_lower_bounds(g, dst, i) for i in range(2)]
            while state.regions:
                region = select_largest_region(state.regions)
                outcome = solve_region(g, src, dst, region, "chebyshev", tables)
                update_partition(state, region, outcome)
                covered = (
                    total_area(state.regions)
                    + total_area(state.dominated_volume)
                    + total_area(state.infeasible_volume)
                )
                assert covered == pytest.approx(box_area, rel=1e-9)

    def test_soundness_front_never_in_dominated_or_infeasible(self):
        rng = random.Random(53)
        for _ in range(10):
            g, src, dst = random_graph(rng, rng.randint(4, 9), 2)
            front = [v for v, _ in brute_force_front(g, src, dst)]
            state = init_phase(g, src, dst)
            tables = [reverse_lower_bounds(g, dst, i) for i in range(2)]
            while state.regions:
                region = select_largest_region(state.regions)
                outcome = solve_region(g, src, dst, region, "chebyshev", tables)
                update_partition(state, region, outcome)
                for v in front:
                    for box in state.dominated_volume + state.infeasible_volume:
                        assert not (
                            strictly_below(box.lower, v)
                            and strictly_below(v, box.upper)
                        )

    def test_found_mutually_nondominated(self):
        g = load_osdorp()
        front = enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, 0.0)
        values = [v for v, _ in front]
        for a in values:
            for b in values:
                assert not pareto_dominates(a, b)


class TestFrontCsv:
    def test_shape_and_content(self):
        g = load_osdorp()
        front = enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, 0.0)
        buffer = io.StringIO()
        write_front_csv(front, buffer)
        lines = buffer.getvalue().strip().splitlines()
        assert lines[0] == "obj_0,obj_1,path"
        assert len(lines) == 8
        assert lines[1].startswith("568,8,O|")

    def test_empty_front_rejected(self):
        with pytest.raises(ValueError):
            write_front_csv([], io.StringIO())
