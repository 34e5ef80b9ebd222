import random
from fractions import Fraction as F

import pytest

from intervalorders.enumeration import (
    all_interval_orders,
    all_topologies,
    default_labels,
    random_topology,
)
from intervalorders.relations import FiniteRelation, strict_part
from intervalorders.repcore import FunctionPair, is_weakly_continuous
from intervalorders.scales import (
    DyadicScale,
    check_propweak_conditions,
    dyadic_grid,
    mesh,
    scale_to_function,
    scales_from_pair,
    validate_scale,
)
from conftest import random_scale
from intervalorders.topology import FiniteTopology, is_continuous

SIERPINSKI = FiniteTopology.from_sets("ab", [[], ["b"], ["a", "b"]])
CHAIN_AB = FiniteRelation.from_pairs("ab", [("a", "a"), ("b", "b"), ("a", "b")])


def scale(points, mapping):
    return DyadicScale.from_mapping(points, mapping)


def test_validate_examples():
    T = FiniteTopology.discrete("ab")
    assert validate_scale(T, scale("ab", {1: "ab"})).valid
    for top in all_topologies("ab"):
        assert validate_scale(top, scale("ab", {F(1, 2): "ab", 1: "ab"})).valid
    bad = validate_scale(SIERPINSKI, scale("ab", {F(1, 2): "b", 1: "b"}))
    assert not bad.valid and "G(1)" in bad.violation


def test_validate_reports_closure_and_openness():
    # {b} is open in the Sierpinski space but its closure is everything
    res = validate_scale(SIERPINSKI, scale("ab", {F(1, 4): "b", F(1, 2): "b", 1: "ab"}))
    assert not res.valid and res.levels == (F(1, 4), F(1, 2))
    res = validate_scale(SIERPINSKI, scale("ab", {F(1, 2): "a", 1: "ab"}))
    assert not res.valid and "open" in res.violation


def test_scale_structure_is_checked():
    with pytest.raises(ValueError):
        scale("ab", {F(1, 2): "ab"})
    with pytest.raises(ValueError):
        scale("ab", {F(1, 3): "a", 1: "ab"})
    with pytest.raises(ValueError):
        scale("ab", {1: "abc"})


def test_scale_to_function_examples():
    assert scale_to_function(scale("ab", {1: "ab"})) == {"a": 1, "b": 1}
    assert scale_to_function(scale("ab", {F(1, 2): "ab", 1: "ab"})) == {"a": F(1, 2), "b": F(1, 2)}
    assert scale_to_function(scale("ab", {F(1, 2): "a", 1: "ab"})) == {"a": F(1, 2), "b": 1}


def test_mesh():
    assert mesh([1]) == 1
    assert mesh([F(1, 4), F(1, 2), 1]) == F(1, 2)
    assert mesh(dyadic_grid(3)) == F(1, 8)


def test_scales_from_pair_example():
    T = FiniteTopology.discrete("ab")
    p = FunctionPair.from_lists("ab", [0, 1], [0, 1])
    g1, g2 = scales_from_pair(CHAIN_AB, T, p, "a", "b", depth=1)
    assert g1.levels == (F(1, 2), 1)
    assert g1.at(F(1, 2)) == {"a"} and g2.at(F(1, 2)) == {"a"}
    assert validate_scale(T, g1).valid and validate_scale(T, g2).valid
    assert check_propweak_conditions(CHAIN_AB, g1, g2, "a", "b").all_hold


def test_sublevel_sets_grow():
    T = FiniteTopology.discrete("abc")
    R = FiniteRelation.from_pairs("abc", [(x, y) for x in "abc" for y in "abc" if x <= y])
    p = FunctionPair.from_lists("abc", [0, F(1, 2), 1], [0, F(1, 2), 1])
    g1, _ = scales_from_pair(R, T, p, "a", "c", depth=3)
    assert all(s <= t for s, t in zip(g1.sets, g1.sets[1:]))


def test_refinement_consistency():
    T = FiniteTopology.discrete("ab")
    p = FunctionPair.from_lists("ab", [0, 1], [0, 1])
    coarse = scales_from_pair(CHAIN_AB, T, p, "a", "b", depth=1)
    fine = scales_from_pair(CHAIN_AB, T, p, "a", "b", depth=3)
    for c, f in zip(coarse, fine):
        assert f.restricted(c.levels) == c


def test_scales_from_pair_preconditions():
    T = FiniteTopology.discrete("ab")
    good = FunctionPair.from_lists("ab", [0, 1], [0, 1])
    with pytest.raises(ValueError):
        scales_from_pair(CHAIN_AB, T, good, "b", "a")
    with pytest.raises(ValueError):
        scales_from_pair(CHAIN_AB, T, FunctionPair.from_lists("ab", [0, 0], [0, 0]), "a", "b")
    with pytest.raises(ValueError):
        scales_from_pair(CHAIN_AB, T, FunctionPair.from_lists("ab", [2, 1], [0, 0]), "a", "b")


def test_condition_examples():
    full = scale("ab", {F(1, 2): "ab", 1: "ab"})
    res = check_propweak_conditions(CHAIN_AB, full, full, "a", "b")
    assert res.a_holds and res.b_holds and not res.c_holds
    R = FiniteRelation.full("ab")
    assert not strict_part(R).pairs()
    for g1 in (full, scale("ab", {F(1, 2): "", 1: "ab"})):
        for g2 in (full, scale("ab", {F(1, 2): "a", 1: "ab"})):
            assert check_propweak_conditions(R, g1, g2, "a", "b").b_holds
    with pytest.raises(ValueError):
        check_propweak_conditions(CHAIN_AB, full, scale("ab", {1: "ab"}), "a", "b")


def test_round_trip_on_weak_witnesses_n3():
    labels = default_labels(3)
    for R in all_interval_orders(labels):
        for T in all_topologies(labels):
            res = is_weakly_continuous(R, T)
            if not res.holds:
                continue
            for (x, y), p in res.witnesses.items():
                g1, g2 = scales_from_pair(R, T, p, x, y, depth=2)
                assert validate_scale(T, g1).valid and validate_scale(T, g2).valid
                assert check_propweak_conditions(R, g1, g2, x, y).all_hold
                assert is_continuous(T, scale_to_function(g1))


def test_random_scales_are_valid():
    rng = random.Random(3)
    for _ in range(100):
        T = random_topology(default_labels(3), rng)
        assert validate_scale(T, random_scale(T, rng, rng.randint(1, 4))).valid
