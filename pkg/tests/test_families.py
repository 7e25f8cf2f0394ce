import pytest
from hypothesis import given
from hypothesis import strategies as st

from xorban.core import format_network, image
from xorban.equiv import expand_chain_pattern
from xorban.families import (
    FamilyError,
    FamilyLabeling,
    check_labeling,
    gen_badc,
    gen_chain,
    gen_flower,
    gen_random_cactus,
    is_cactus,
)


def fps(net):
    return [x for x in range(1 << net.n) if image(net, x) == x]


def test_badc12_rules():
    net, lab = gen_badc(1, 2)
    assert format_network(net) == "1 : x1 ^ x2\n2 : x1\n"
    assert lab.center == 1 and lab.sizes == (1, 2)


@pytest.mark.parametrize("n1, n2", [(2, 1), (2, 2), (3, 5), (6, 1)])
def test_badc_size_identity(n1, n2):
    net, lab = gen_badc(n1, n2)
    assert net.n == n1 + n2 - 1 == lab.n
    assert len(net.rule(lab.center).literals) == 2
    check_labeling(net, lab)


def test_badc_classes_and_errors():
    neg, lab = gen_badc(3, 3, "negative")
    assert sum(l.negated for l in neg.rule(lab.center).literals) == 2
    with pytest.raises(FamilyError):
        gen_badc(1, 1)
    with pytest.raises(FamilyError):
        gen_badc(3, 3, "odd")
    with pytest.raises(FamilyError):
        gen_badc(2, 2, [[False], [False, False]])


def test_flower_m2_is_badc():
    assert gen_flower((3, 4))[0] == gen_badc(3, 4)[0]


def test_flower_fixed_points():
    net, _ = gen_flower((3, 3, 3))
    assert fps(net) == [0, (1 << 7) - 1]
    assert fps(gen_flower((3, 3, 3), "negative")[0]) == []


def test_chain_m2_is_badc_shape():
    chain, lab = gen_chain((3, 4))
    assert is_cactus(chain) and len(lab.intersections) == 1


def test_chain_fixed_points():
    net, lab = gen_chain((3, 3, 3, 3), (2, 3, 1))
    assert fps(net) == sorted([0, expand_chain_pattern(net, lab, "101")])
    assert fps(gen_chain((3, 3, 3))[0]) == [0]


def test_chain_offset_validation():
    with pytest.raises(FamilyError):
        gen_chain((3, 3, 3), (2,))
    with pytest.raises(FamilyError):
        gen_chain((3, 3, 3), (1, 2))
    with pytest.raises(FamilyError):
        gen_chain((3, 3), (5,))


def test_labeling_json_and_vectors():
    net, lab = gen_badc(4, 4)
    again = FamilyLabeling.from_json(lab.to_json())
    assert again == lab
    x = lab.parse_vector("(0000,0001)")
    assert lab.format_vector(x) == "(0000,0001)"
    with pytest.raises(FamilyError):
        lab.parse_vector("(1000,0001)")  # center given two values
    with pytest.raises(FamilyError):
        lab.parse_vector("(000,0001)")


def test_cactus_is_deterministic():
    assert gen_random_cactus(5, 10, 3) == gen_random_cactus(5, 10, 3)


@given(st.integers(0, 10_000), st.integers(4, 10), st.integers(1, 3))
def test_random_cactus_valid(seed, n_max, cycles):
    net, lab = gen_random_cactus(seed, n_max, cycles)
    assert net.n <= n_max and lab.m == cycles
    assert is_cactus(net)
    check_labeling(net, lab)


def test_random_cactus_fixed_point_bound():
    from xorban.core import fixed_point_bound

    for seed in range(100):
        net, _ = gen_random_cactus(seed, 9, 1 + seed % 3)
        assert len(fps(net)) <= fixed_point_bound(net)


def test_non_cactus_detected():
    from xorban.core import parse_network

    # two 3-cycles sharing the arc 1 -> 2
    net = parse_network("1 : x3 ^ x4\n2 : x1\n3 : x2\n4 : x2\n")
    assert not is_cactus(net)
