import random

import pytest

from intervalorders.audit import audit_instances, audit_interval_orders, trace_semicontinuity
from intervalorders.enumeration import all_topologies, default_labels, random_interval_order
from intervalorders.relations import FiniteRelation
from intervalorders.topology import FiniteTopology


def test_audit_single_point():
    rep = audit_interval_orders(1)
    assert rep.passed
    assert rep.counts["instances"] == 1
    assert rep.counts["n1.reflexive_relations"] == 1


def test_audit_two_points():
    rep = audit_interval_orders(2)
    assert rep.passed
    assert rep.counts["n2.reflexive_relations"] == 4
    assert rep.counts["n2.interval_orders"] == 3
    assert rep.counts["n2.topologies"] == 4
    assert rep.counts["instances"] == 1 * 1 + 3 * 4


def test_audit_guard():
    with pytest.raises(ValueError):
        audit_interval_orders(5)
    with pytest.raises(ValueError):
        audit_interval_orders(0)


def test_audit_report_shape():
    d = audit_interval_orders(2).to_dict()
    assert d["passed"] and d["violations"] == []
    assert set(d) == {"name", "passed", "counts", "violations", "notes"}


def test_monotonicity_readings_on_chain():
    chain = FiniteRelation.from_pairs("ab", [("a", "a"), ("b", "b"), ("a", "b")])
    out = trace_semicontinuity(chain, FiniteTopology.discrete("ab"))
    assert all(all(v.values()) for v in out.values())


def test_audit_instances_on_random_sample():
    rng = random.Random(11)
    labels = default_labels(4)
    tops = all_topologies(labels)
    pairs = [(random_interval_order(labels, rng), rng.choice(tops)) for _ in range(40)]
    rep = audit_instances(pairs, depth=2)
    assert rep.passed and rep.counts["instances"] == 40


def test_audit_exhaustive_four_points():
    # beyond the sampled acceptance check: every interval order x every topology
    rep = audit_interval_orders(4, with_scales=False)
    assert rep.passed
    assert rep.counts["instances"] == 74049
    assert rep.counts["n4.interval_orders"] == 207
    # instances where only one reading of the monotonicity clause passes
    assert rep.counts["traces.readings_differ"] == len(rep.notes) == 24
