import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xorban.atg import bfs_distance, build_atg, fixed_points, unreachables
from xorban.core import apply_update, config_from_str, is_unreachable, parse_network, step
from xorban.corpus import small_corpus, in_theorem_scope
from xorban.families import gen_badc, gen_flower, gen_random_cactus
from xorban.planner import (
    PlanError,
    UpdatePlan,
    badc_waypoint_steps,
    find_induced_badc,
    greedy_plan,
    plan_badc,
    plan_destabilize,
    plan_general,
    plan_general_report,
    synchronous_unreachable_witness,
    verify_plan,
)


def all_pairs(net):
    g = build_atg(net)
    U, S = set(unreachables(g)), set(fixed_points(g))
    for x in range(g.size):
        if x in S:
            continue
        for y in range(g.size):
            if y == x or y not in U:
                yield x, y


# -- structure search -----------------------------------------------------------


def test_find_induced_badc():
    net, lab = gen_badc(3, 3)
    b = find_induced_badc(net)
    assert b.center == lab.center and set(b.automata) == set(net.automata)
    b = find_induced_badc(gen_flower((3, 3, 3))[0])
    assert b.center == 1 and b.size == 5
    assert find_induced_badc(parse_network("1 : x5\n2 : x1\n3 : x2\n4 : x3\n5 : x4\n")) is None
    assert find_induced_badc(gen_badc(2, 2)[0]) is None


# -- double cycles --------------------------------------------------------------------


@pytest.mark.parametrize("n1, n2", [(3, 2), (2, 3), (1, 4), (4, 1), (3, 3), (4, 2), (2, 2), (1, 2)])
@pytest.mark.parametrize("cls", ["positive", "mixed", "negative"])
def test_plan_badc_exhaustive(n1, n2, cls):
    net, lab = gen_badc(n1, n2, cls)
    n = net.n
    for x, y in all_pairs(net):
        p = plan_badc(net, x, y, labeling=lab)
        assert verify_plan(net, p).ok
        assert len(p) <= 4 * n * n


def test_badc44_example_pair():
    net, lab = gen_badc(4, 4)
    x, y = lab.parse_vector("(0000,0001)"), lab.parse_vector("(0110,0011)")
    p = plan_badc(net, x, y, labeling=lab)
    assert verify_plan(net, p).ok and len(p) <= 4 * net.n ** 2


@pytest.mark.parametrize(
    "sizes, pattern",
    [((3, 3), "(010,010)"), ((4, 3), "(1010,101)"), ((4, 4), "(0101,0101)"), ((3, 4), "(101,1010)"), ((5, 5), "(01010,01010)")],
)
def test_waypoints(sizes, pattern):
    net, lab = gen_badc(*sizes)
    c1, c2 = lab.cycles
    rng = random.Random(1)
    stable = set(fixed_points(build_atg(net)))
    for x in rng.sample(range(1 << net.n), 12):
        if x in stable:
            continue
        run = badc_waypoint_steps(net, c1, c2, x) if len(c1) >= len(c2) else badc_waypoint_steps(net, c2, c1, x)
        w = run.x
        assert lab.format_vector(w)[1:-1].split(",")[1:] == pattern[1:-1].split(",")[1:]
        assert all(run.unstable(a) for a in net.automata if a != lab.center)


def test_badc12_single_step(badc12):
    p = plan_badc(badc12, "01", "11")
    assert p.steps == (1,)


def test_plan_errors():
    net, lab = gen_badc(3, 3)
    with pytest.raises(PlanError, match="stable"):
        plan_badc(net, 0, 5, labeling=lab)
    u = unreachables(build_atg(net))[0]
    with pytest.raises(PlanError, match="unreachable"):
        plan_badc(net, 1, u, labeling=lab)
    assert plan_badc(net, u, u, labeling=lab).steps == ()


def test_greedy_plan_only_when_optimal_path_exists():
    net, _ = gen_flower((3, 3, 3))
    x = config_from_str("1000000")
    g = greedy_plan(net, x, 0)
    assert g is not None and len(g) == 1


# -- destabilization ---------------------------------------------------------------------


def test_plan_destabilize():
    net, _ = gen_badc(4, 3)
    x = config_from_str("100000")
    assert plan_destabilize(net, x, 2, 2).steps == ()
    p = plan_destabilize(net, x, 2, 4)
    y = p.target
    assert step(net, 4, y) != y
    with pytest.raises(PlanError):
        plan_destabilize(net, 0, 1, 3)


# -- general networks ------------------------------------------------------------------


def test_plan_general_flower_to_fixed_point_linear():
    net, _ = gen_flower((3, 3, 3))
    p = plan_general(net, "1000000", "0000000")
    assert verify_plan(net, p).ok and len(p) <= 4 * net.n


def test_plan_general_delegates_on_badc():
    net, _ = gen_badc(3, 4)
    r = plan_general_report(net, "100000", "010010", shortcut=False)
    assert r.stats == {"badc_calls": 1} and verify_plan(net, r.plan).ok


def test_plan_general_rejects_out_of_scope():
    with pytest.raises(PlanError):
        plan_general(gen_badc(2, 2)[0], "100", "000")
    with pytest.raises(PlanError):
        plan_general(parse_network("1 : x1 ^ x2\n2 : x2\n"), "10", "00")


def test_plan_general_on_corpus_sample():
    rng = random.Random(3)
    nets = [e.net for e in small_corpus(0) if e.n <= 9 and in_theorem_scope(e.net)]
    for _ in range(60):
        net = rng.choice(nets)
        g = build_atg(net)
        x, y = rng.randrange(g.size), rng.randrange(g.size)
        if g.unstable[x] == 0 or (y != x and not g.has_in_arc()[y]):
            continue
        for shortcut in (True, False):
            p = plan_general(net, x, y, shortcut=shortcut)
            assert verify_plan(net, p).ok
            assert len(p) >= bfs_distance(g, x, y)


@settings(max_examples=25)
@given(st.integers(0, 5000), st.data())
def test_plan_general_random_cacti(seed, data):
    net, _ = gen_random_cactus(seed, 9, 2 + seed % 2)
    if not in_theorem_scope(net):
        return
    g = build_atg(net)
    x = data.draw(st.integers(0, g.size - 1))
    y = data.draw(st.integers(0, g.size - 1))
    if g.unstable[x] == 0 or (y != x and not g.has_in_arc()[y]):
        return
    assert verify_plan(net, plan_general(net, x, y, shortcut=False)).ok


# -- verification ----------------------------------------------------------------------------


def test_verify_plan(badc12):
    assert verify_plan(badc12, UpdatePlan((), 1, 1, 2)).ok
    good = plan_badc(badc12, "01", "11")
    bad = UpdatePlan((2,), good.start, good.target, 2)
    check = verify_plan(badc12, bad)
    assert not check.ok and check.divergence == 1  # trace index after the first step


# -- synchronous witness ----------------------------------------------------------------


@pytest.mark.parametrize("sizes", [(3, 3), (3, 1), (1, 3), (4, 2), (2, 3)])
@pytest.mark.parametrize("cls", ["positive", "mixed", "negative"])
def test_synchronous_witness(sizes, cls):
    net, lab = gen_badc(*sizes, cls)
    for x in unreachables(build_atg(net)):
        xh, W = synchronous_unreachable_witness(net, x, labeling=lab)
        assert apply_update(net, W, xh) == x and not is_unreachable(net, xh)


def test_center_excluded_update_set_has_no_witness():
    net, lab = gen_badc(3, 3)
    W = [a for a in lab.cycles[0] if a != lab.center]
    for x in unreachables(build_atg(net)):
        assert not any(apply_update(net, W, xh) == x and not is_unreachable(net, xh) for xh in range(1 << net.n))
