import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import networks
from xorban.atg import build_atg, fixed_points, unreachables
from xorban.core import canonical, dual, flip, image, parse_network, reverse
from xorban.equiv import (
    ClassificationError,
    IsoWitness,
    RewriteError,
    RewriteStep,
    check_conjugacy,
    check_witness,
    classify_chain,
    classify_flower,
    expand_chain_pattern,
    find_isomorphism,
    fixed_points_symbolic,
    is_positive_class,
    isomorphism_classes,
    normalize_signs,
    rewrite,
)
from xorban.families import gen_badc, gen_chain, gen_flower
from xorban.reproduce import all_sign_variants


def brute_fps(net):
    return [x for x in range(1 << net.n) if image(net, x) == x]


# -- witnesses ------------------------------------------------------------------


def test_identity_witness():
    net, _ = gen_flower((3, 2))
    assert check_witness(net, net, IsoWitness.identity(net.n))


def test_positive_and_mixed_badc_via_full_flip():
    pos, _ = gen_badc(3, 4)
    mixed, _ = gen_badc(3, 4, "mixed")
    w = IsoWitness.identity(pos.n, pos.automata)
    assert check_witness(pos, flip(pos, pos.automata), w)
    found = find_isomorphism(pos, mixed)
    assert found is not None and check_witness(pos, mixed, found) and check_conjugacy(pos, mixed, found)


def test_flower_classes_not_isomorphic():
    assert find_isomorphism(gen_flower((3, 3, 3))[0], gen_flower((3, 3, 3), "negative")[0]) is None


def test_dual_isomorphism_holds_for_badc_and_fails_for_odd_flower():
    net, _ = gen_badc(3, 3)
    w = find_isomorphism(net, dual(net))
    assert w is not None and check_conjugacy(net, dual(net), w)
    # the dual of an odd positive flower has no fixed point, so no witness can exist
    f, _ = gen_flower((3, 3, 3))
    assert len(brute_fps(f)) == 2 and brute_fps(dual(f)) == []
    assert find_isomorphism(f, dual(f)) is None


@given(networks(max_n=5), st.data())
def test_flip_canonical_and_self_dual_isomorphic(net, data):
    S = data.draw(st.sets(st.integers(1, net.n)))
    for other in (flip(net, S), canonical(net), flip(net, net.automata)):
        w = find_isomorphism(net, other)
        assert w is not None and check_witness(net, other, w) and check_conjugacy(net, other, w)


@given(networks(max_n=5), st.data())
def test_witness_under_relabeling(net, data):
    perm = data.draw(st.permutations(list(net.automata)))
    from xorban.core import relabel

    other = relabel(net, {i: perm[i - 1] for i in net.automata})
    w = find_isomorphism(net, other)
    assert w is not None and check_conjugacy(net, other, w)
    assert check_witness(other, net, w.inverse())


def test_witness_compose():
    net, _ = gen_badc(3, 3)
    a, b = flip(net, [2]), flip(net, [2, 4])
    w1, w2 = find_isomorphism(net, a), find_isomorphism(a, b)
    assert check_witness(net, b, w1.compose(w2))


def test_bad_witness_rejected():
    net, _ = gen_badc(3, 3)
    assert not check_witness(net, net, IsoWitness.identity(net.n, [2]))


# -- rewriting ---------------------------------------------------------------------


def test_rewrite_rules():
    net = parse_network("1 : !x1 ^ !x2\n2 : x1\n")
    assert str(rewrite(net, RewriteStep("flip_pair", (1, (1, 2)))).net.rule(1)) == "x1 ^ x2"
    net = parse_network("1 : !x1 ^ x2\n2 : x1\n")
    assert str(rewrite(net, RewriteStep("sign_swap", (1, (1, 2)))).net.rule(1)) == "x1 ^ !x2"
    with pytest.raises(RewriteError):
        rewrite(net, RewriteStep("flip_pair", (1, (1, 2))))
    with pytest.raises(RewriteError):
        rewrite(net, RewriteStep("teleport", ()))


def test_vertex_flip_rule():
    net, lab = gen_badc(3, 3)
    r = rewrite(net, RewriteStep("vertex_flip", (lab.center,)))
    assert r.net == flip(net, [lab.center])
    assert check_witness(net, r.net, r.witness)


def test_region_flip_is_isomorphism():
    net, lab = gen_flower((3, 3, 2))
    r = rewrite(net, RewriteStep("region_flip", (lab.cycles[0], lab.cycles[1])))
    assert check_witness(net, r.net, r.witness)


@given(networks(max_n=5))
def test_every_rewrite_step_is_sound(net):
    out, steps = normalize_signs(net)
    cur = net
    for s in steps:
        r = rewrite(cur, s)
        assert check_witness(cur, r.net, r.witness)
        cur = r.net
    assert cur == out


def test_normalize_examples():
    pos, _ = gen_badc(3, 3)
    assert normalize_signs(pos) == (pos, [])
    mixed, _ = gen_badc(3, 3, "mixed")
    assert not any(l.negated for r in normalize_signs(mixed)[0].rules for l in r.literals)
    neg, _ = gen_chain((3, 3, 3, 3), (2, 3, 1), "negative")
    assert any(l.negated for r in normalize_signs(neg)[0].rules for l in r.literals)
    assert not is_positive_class(neg)


@given(networks(max_n=6), st.data())
def test_normal_form_is_orbit_invariant(net, data):
    S = data.draw(st.sets(st.integers(1, net.n)))
    assert normalize_signs(net)[0] == normalize_signs(flip(net, S))[0]


def test_normal_form_is_coset_minimum_by_brute_force():
    from xorban.core import parity_vector

    for net in all_sign_variants((3, 2, 2), lambda s: gen_flower((3, 2, 2), s))[::7]:
        best = min(parity_vector(flip(net, S)) for k in range(net.n + 1) for S in itertools.combinations(net.automata, k))
        assert parity_vector(normalize_signs(net)[0]) == best


# -- classes ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "sizes, gen, want",
    [
        ((2, 2, 2), lambda s: gen_flower((2, 2, 2), s), 2),
        ((2, 2), lambda s: gen_flower((2, 2), s), 1),
        ((1, 2, 2, 1), lambda s: gen_chain((1, 2, 2, 1), None, s), 2),
        ((2, 2, 2, 2), lambda s: gen_chain((2, 2, 2, 2), None, s), 2),
        ((1, 2, 1), lambda s: gen_chain((1, 2, 1), None, s), 1),
    ],
)
def test_class_counts(sizes, gen, want):
    assert len(isomorphism_classes(all_sign_variants(sizes, gen))) == want


# -- fixed points and classifiers -----------------------------------------------------------


def test_symbolic_fixed_points_examples():
    assert len(fixed_points_symbolic(parse_network("1 : x1\n2 : x2\n3 : x3\n"))) == 8
    assert fixed_points_symbolic(gen_flower((3, 3))[0]) == [0]
    net, lab = gen_chain((3, 3, 3, 3), (2, 3, 1))
    assert fixed_points_symbolic(net) == sorted([0, expand_chain_pattern(net, lab, "101")])


@given(networks())
def test_symbolic_matches_brute_force(net):
    assert fixed_points_symbolic(net) == brute_fps(net)


@pytest.mark.parametrize("sizes", [(3, 3), (3, 3, 3), (2, 2, 2), (3, 2, 2, 1), (1, 3), (4, 4, 3)])
@pytest.mark.parametrize("cls", ["positive", "negative"])
def test_classify_flower_matches_atg(sizes, cls):
    net, lab = gen_flower(sizes, cls)
    c = classify_flower(net, lab)
    g = build_atg(net)
    assert list(c.fixed_points) == fixed_points(g)
    assert list(c.unreachables) == unreachables(g)
    assert c.cls == ("positive" if is_positive_class(net) else "negative")
    assert c.reverse_cls == ("positive" if is_positive_class(reverse(net)) else "negative")


@pytest.mark.parametrize("sizes, offsets", [((3, 3, 3), None), ((3, 3, 3, 3), (2, 3, 1)), ((2, 2, 2, 2), None), ((1, 2, 2, 1), None)])
@pytest.mark.parametrize("cls", ["positive", "negative"])
def test_classify_chain_matches_atg(sizes, offsets, cls):
    net, lab = gen_chain(sizes, offsets, cls)
    c = classify_chain(net, lab)
    g = build_atg(net)
    assert list(c.fixed_points) == fixed_points(g)
    assert list(c.unreachables) == unreachables(g)


def test_chain_m3_shape():
    net, lab = gen_chain((3, 3, 3))
    c = classify_chain(net, lab)
    assert len(c.fixed_points) == 1 and len(c.unreachables) == 1


def test_classifier_rejects_wrong_family():
    net, lab = gen_chain((3, 3, 3))
    with pytest.raises(ClassificationError):
        classify_flower(net, lab)
