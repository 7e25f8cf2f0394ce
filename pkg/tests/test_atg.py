import json

import numpy as np
import pytest
from hypothesis import given

from conftest import networks
from xorban import graphs
from xorban.atg import (
    AtgLimitError,
    bfs_distance,
    build_atg,
    check_theorem_shape,
    condense,
    fixed_points,
    shortest_updates,
    to_dot,
    to_json,
    transient_kind,
    unreachables,
)
from xorban.core import config_from_str, reverse, step
from xorban.families import gen_badc, gen_chain, gen_flower
from xorban.planner import verify_plan, UpdatePlan
from xorban.reproduce import FIG_12, FIG_22, FIG_22_PERM, edge_set


def test_figure_fixtures():
    assert edge_set(gen_badc(1, 2)[0]) == FIG_12
    assert edge_set(gen_badc(2, 2)[0], FIG_22_PERM) == FIG_22


def test_unreachables_of_small_badcs(badc12, fig22):
    assert unreachables(build_atg(badc12)) == [config_from_str("10")]
    # the in-degree scan of the (2,2) figure gives 010 as the only source
    assert unreachables(build_atg(fig22)) == [config_from_str("010")]
    assert fixed_points(build_atg(fig22)) == [0]


@given(networks())
def test_out_degree_and_determinism(net):
    g = build_atg(net)
    assert len(list(g.edges())) == net.n * (1 << net.n)
    for x in range(g.size):
        for i in net.automata:
            assert g.successor(x, i) == step(net, i, x)
    assert np.array_equal(build_atg(net, workers=3).unstable, g.unstable)


@given(networks())
def test_condensation_matches_tarjan(net):
    g = build_atg(net)
    cond = condense(g)
    comps = graphs.tarjan_scc(range(g.size), g.successors)
    assert sorted(sorted(c) for c in comps) == sorted(cond.members(k) for k in range(cond.count))
    assert cond.attractors()
    for x in fixed_points(g):
        k = cond.scc[x]
        assert cond.terminal[k] and cond.sizes[k] == 1


def test_condensation_is_acyclic():
    import networkx as nx

    cond = condense(build_atg(gen_flower((3, 3, 2))[0]))
    dag = nx.DiGraph([(a, b) for a in range(cond.count) for b in cond.successors(a)])
    assert nx.is_directed_acyclic_graph(dag)


def test_flower_shapes_by_reverse_class():
    # net and reverse both negative: one attractor covering everything
    cond = condense(build_atg(gen_flower((2, 2, 2), "negative")[0]))
    assert cond.count == 1 and cond.sizes[0] == 2 ** 4
    # negative net with a positive reverse: two unreachables feed one attractor
    g = build_atg(gen_flower((3, 3, 3), "negative")[0])
    cond = condense(g)
    assert sorted(cond.sizes.tolist()) == [1, 1, 2 ** 7 - 2]
    assert len(unreachables(g)) == 2 and fixed_points(g) == []


def test_transient_kinds(fig22):
    g = build_atg(fig22)
    cond = condense(g)
    assert transient_kind(g, cond, 0) is None
    assert transient_kind(g, cond, config_from_str("010")) == "irreversible"
    assert transient_kind(g, cond, config_from_str("111")) == "reversible"


@given(networks(max_n=5))
def test_reverse_duality(net):
    assert unreachables(build_atg(net)) == fixed_points(build_atg(reverse(net)))


def test_theorem_shape_examples():
    r = check_theorem_shape(gen_flower((3, 3))[0])
    assert r.in_scope and r.verdict
    assert (len(r.unreachables), len(r.fixed_points), r.big_scc_size) == (1, 1, 2 ** 5 - 2)
    chain = check_theorem_shape(gen_chain((2, 2, 2, 2))[0])
    assert not chain.in_scope
    assert check_theorem_shape(gen_chain((2, 3, 2, 2))[0]).big_scc_size == 2 ** 6 - 2
    small = check_theorem_shape(gen_badc(1, 2)[0])
    assert not small.in_scope and "double cycle" in small.scope_reason


def test_theorem_shape_diameter():
    r = check_theorem_shape(gen_badc(3, 3)[0], diameter=True)
    assert r.verdict and r.diameter > 0


def test_bfs(badc12):
    g = build_atg(badc12)
    assert bfs_distance(g, "01", "01") == 0
    assert bfs_distance(g, "01", "00") == 1
    assert bfs_distance(g, "00", "01") is None
    path = shortest_updates(g, "10", "01")
    assert verify_plan(badc12, UpdatePlan(tuple(path), 1, 2, 2)).ok


def test_limit():
    with pytest.raises(AtgLimitError):
        build_atg(gen_badc(3, 3)[0], limit=4)


def test_exports(fig22):
    g = build_atg(fig22)
    dot = to_dot(g)
    assert dot.startswith("digraph") and '"000" -> "000" [label="{1}|{2}|{3}"]' in dot
    data = json.loads(to_json(g))
    assert set(data) >= {"nodes", "edges", "sccs", "fixed_points", "unreachables"}
    assert data["unreachables"] == ["010"] and len(data["edges"]) == 24
