"""Exhaustive audits of the representation equivalences on small finite spaces.

Each audit walks every instance, runs the decision procedures from both
sides and records any disagreement verbatim.  Counts are kept per check so
a report shows what was actually exercised.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .biorders import (
    FiniteBiorder,
    biorder_pair_is_continuous,
    biorder_weakly_continuous,
    check_ferrers_biorder,
    check_jointly_dense,
    decide_continuous_biorder_representation,
    verify_biorder_almost_representation,
    verify_biorder_representation,
)
from .enumeration import all_relations, all_topologies, default_labels
from .relations import FiniteRelation, check_axioms, strict_part, traces
from .repcore import (
    check_io_separability,
    decide_continuous_representation,
    dyadic_combine,
    is_weakly_continuous,
    pair_is_continuous,
    verify_almost_representation,
    verify_representation,
)
from .scales import check_propweak_conditions, scale_to_function, scales_from_pair, validate_scale
from .topology import (
    FiniteTopology,
    check_almost_semicontinuity,
    is_continuous,
    relation_semicontinuity,
)

MAX_POINTS = 4
MAX_BIORDER_SIDE = 3


@dataclass
class AuditReport:
    name: str
    counts: Counter = field(default_factory=Counter)
    violations: list[dict] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, check: str, instance: str, detail) -> None:
        self.counts[f"violations.{check}"] += 1
        self.violations.append({"check": check, "instance": instance, "detail": str(detail)})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "counts": dict(sorted(self.counts.items())),
            "violations": self.violations,
            "notes": self.notes,
        }


# readings of the monotonicity clause in almost semicontinuity:
#   "literal": upper side monotone for the interval order's strict part,
#              lower side monotone for the strict part of the second trace
#   "trace":   each side monotone for the strict part of the trace tested
READINGS = ("literal", "trace")


def trace_semicontinuity(R: FiniteRelation, T: FiniteTopology) -> dict[str, dict[str, bool]]:
    """Almost lower semicontinuity of the first trace and almost upper
    semicontinuity of the second, under each reading."""
    star, starstar = traces(R)
    P = strict_part(R)
    Pstar, Pstarstar = strict_part(star), strict_part(starstar)
    mono = {
        "literal": {"star": Pstarstar, "starstar": P},
        "trace": {"star": Pstar, "starstar": Pstarstar},
    }
    out = {}
    for reading in READINGS:
        lower = check_almost_semicontinuity(T, star, "lower", mono[reading]["star"]).holds
        upper = check_almost_semicontinuity(T, starstar, "upper", mono[reading]["starstar"]).holds
        out[reading] = {"star_almost_lower": lower, "starstar_almost_upper": upper}
    return out


def audit_instance(R: FiniteRelation, T: FiniteTopology, report: AuditReport,
                   instance: str, depth: int = 2, with_scales: bool = True) -> bool:
    """All finite-scale checks for one interval order on one topology.

    Returns whether the order is weakly continuous on T.
    """
    c = report.counts
    c["instances"] += 1
    decision = decide_continuous_representation(R, T)
    weak = is_weakly_continuous(R, T)
    sep = check_io_separability(R, R.elements)
    if not sep.holds:
        report.fail("separable_with_D_equal_X", instance, sep.failing_strict_pair)

    if decision.feasible != weak.holds:
        report.fail("representable_iff_weakly_continuous", instance,
                    f"feasible={decision.feasible} weak={weak.holds}")
    else:
        c["equivalence.agree"] += 1

    if decision.feasible:
        c["representable"] += 1
        p = decision.pair
        if not verify_representation(R, p).holds or not pair_is_continuous(T, p):
            report.fail("solver_pair_is_continuous_representation", instance, p)
        # a continuous representation witnesses every strict pair at once
        P = strict_part(R)
        if not verify_almost_representation(R, p).holds or any(
                not p.v[x] < p.u[y] for x, y in P.pairs()):
            report.fail("representation_is_weak_witness", instance, p)
    elif decision.certificate is None or sum(k.bound for k in decision.certificate) >= 0:
        report.fail("negative_cycle_certificate", instance, decision.certificate)

    if not weak.holds:
        if weak.certificate is None or sum(k.bound for k in weak.certificate) >= 0:
            report.fail("weak_continuity_certificate", instance, weak.certificate)
    else:
        c["weakly_continuous"] += 1
        for (x, y), w in weak.witnesses.items():
            if not (verify_almost_representation(R, w).holds and pair_is_continuous(T, w)
                    and w.v[x] < w.u[y]):
                report.fail("weak_witness", instance, (x, y, w))
        # the relation itself must be continuous
        if not relation_semicontinuity(T, R).continuous:
            report.fail("weakly_continuous_relation_is_continuous", instance, "")
        readings = trace_semicontinuity(R, T)
        passing = [r for r in READINGS if all(readings[r].values())]
        for r in passing:
            c[f"traces.{r}"] += 1
        if not passing:
            report.fail("trace_almost_semicontinuity", instance, readings)
        elif len(passing) < len(READINGS):
            c["traces.readings_differ"] += 1
            report.notes.append({"note": "readings differ", "instance": instance,
                                 "readings": readings})
        if weak.witnesses:
            combined = dyadic_combine(weak.witnesses.values())
            c["dyadic.checked"] += 1
            if not verify_representation(R, combined).holds or not pair_is_continuous(T, combined):
                report.fail("dyadic_sum_is_continuous_representation", instance, combined)
        if with_scales:
            for (x, y), w in weak.witnesses.items():
                gs, gss = scales_from_pair(R, T, w, x, y, depth)
                c["scales.pairs"] += 1
                cond = check_propweak_conditions(R, gs, gss, x, y)
                ok = (cond.all_hold and validate_scale(T, gs).valid
                      and validate_scale(T, gss).valid
                      and is_continuous(T, scale_to_function(gs))
                      and is_continuous(T, scale_to_function(gss)))
                if not ok:
                    report.fail("scales_round_trip", instance, (x, y, cond.violation))

    if check_axioms(R).total_preorder:
        c["total_preorders"] += 1
        if weak.holds != relation_semicontinuity(T, R).continuous:
            report.fail("total_preorder_weak_iff_continuous", instance,
                        f"weak={weak.holds}")
    return weak.holds


def audit_interval_orders(n_max: int, depth: int = 2, with_scales: bool = True) -> AuditReport:
    """Every interval order on n <= n_max points against every topology."""
    if not 1 <= n_max <= MAX_POINTS:
        raise ValueError(f"n_max must be between 1 and {MAX_POINTS}")
    report = AuditReport(f"interval_orders(n<={n_max})")
    for n in range(1, n_max + 1):
        labels = default_labels(n)
        tops = all_topologies(labels)
        report.counts[f"n{n}.topologies"] = len(tops)
        for R in all_relations(labels):
            report.counts[f"n{n}.reflexive_relations"] += 1
            if not check_axioms(R).interval_order:
                continue
            report.counts[f"n{n}.interval_orders"] += 1
            for t, T in enumerate(tops):
                audit_instance(R, T, report, f"n={n} R={R} T#{t}", depth, with_scales)
    return report


def audit_instances(pairs: Iterable[tuple[FiniteRelation, FiniteTopology]],
                    name: str = "sampled", depth: int = 2,
                    with_scales: bool = True) -> AuditReport:
    report = AuditReport(name)
    for k, (R, T) in enumerate(pairs):
        audit_instance(R, T, report, f"#{k} R={R} T={T}", depth, with_scales)
    return report


def _all_biorders(m: int, n: int):
    a_labels = default_labels(m)
    x_labels = tuple(f"x{j}" for j in range(n))
    for code in range(1 << (m * n)):
        rows = tuple(code >> (i * n) & ((1 << n) - 1) for i in range(m))
        yield FiniteBiorder(a_labels, x_labels, rows)


def audit_biorder_instance(B: FiniteBiorder, T_A: FiniteTopology, T_X: FiniteTopology,
                           report: AuditReport, instance: str) -> tuple[bool, bool]:
    c = report.counts
    c["instances"] += 1
    ferrers = check_ferrers_biorder(B).holds
    decision = decide_continuous_biorder_representation(B, T_A, T_X)
    dense = check_jointly_dense(B, B.a_labels, B.x_labels).holds
    weak = biorder_weakly_continuous(B, T_A, T_X)
    if not dense:
        report.fail("jointly_dense_with_full_sets", instance, "")
    if decision.feasible != (dense and weak.holds):
        report.fail("representable_iff_dense_and_weakly_continuous", instance,
                    f"feasible={decision.feasible} weak={weak.holds}")
    if decision.feasible and not ferrers:
        report.fail("representable_implies_ferrers", instance, "")
    if decision.feasible:
        c["representable"] += 1
        p = decision.pair
        if not (verify_biorder_representation(B, p, "strict").holds
                and biorder_pair_is_continuous(p, T_A, T_X)):
            report.fail("solver_pair_is_continuous_representation", instance, p)
    elif decision.certificate is None or sum(k.bound for k in decision.certificate) >= 0:
        report.fail("negative_cycle_certificate", instance, decision.certificate)
    if weak.holds:
        c["weakly_continuous"] += 1
        for (a, x), w in weak.witnesses.items():
            if not (verify_biorder_almost_representation(B, w).holds
                    and biorder_pair_is_continuous(w, T_A, T_X) and w.v[a] < w.u[x]):
                report.fail("weak_witness", instance, (a, x, w))
        if weak.witnesses:
            combined = dyadic_combine(weak.witnesses.values())
            c["dyadic.checked"] += 1
            if not (verify_biorder_representation(B, combined, "strict").holds
                    and biorder_pair_is_continuous(combined, T_A, T_X)):
                report.fail("dyadic_sum_is_continuous_representation", instance, combined)
    return ferrers, decision.feasible


def audit_biorders(size_max: int, topologies: str = "extremal") -> AuditReport:
    """Every strict table on |A|, |X| <= size_max against topology pairs.

    ``topologies='extremal'`` pairs discrete and indiscrete spaces;
    ``'all'`` uses every topology on each side.  Continuity on a finite
    space depends only on the connected components, so under ``'all'`` each
    table is solved once per pair of component partitions and the result is
    counted for every topology pair sharing them.
    """
    if not 1 <= size_max <= MAX_BIORDER_SIDE:
        raise ValueError(f"size_max must be between 1 and {MAX_BIORDER_SIDE}")
    if topologies not in ("extremal", "all"):
        raise ValueError("topologies must be 'extremal' or 'all'")
    report = AuditReport(f"biorders(size<={size_max}, {topologies})")
    for m in range(1, size_max + 1):
        for n in range(1, size_max + 1):
            a_labels = default_labels(m)
            x_labels = tuple(f"x{j}" for j in range(n))
            if topologies == "extremal":
                tops_a = [FiniteTopology.discrete(a_labels), FiniteTopology.indiscrete(a_labels)]
                tops_x = [FiniteTopology.discrete(x_labels), FiniteTopology.indiscrete(x_labels)]
            else:
                tops_a = list(all_topologies(a_labels))
                tops_x = list(all_topologies(x_labels))
            groups_a = _by_components(tops_a)
            groups_x = _by_components(tops_x)
            for B in _all_biorders(m, n):
                report.counts[f"{m}x{n}.tables"] += 1
                ferrers = check_ferrers_biorder(B).holds
                report.counts[f"{m}x{n}.ferrers"] += ferrers
                for key_a, ta_list in groups_a.items():
                    for key_x, tx_list in groups_x.items():
                        inst = f"{m}x{n} B={B} TA={ta_list[0]} TX={tx_list[0]}"
                        before = report.counts["instances"]
                        audit_biorder_instance(B, ta_list[0], tx_list[0], report, inst)
                        # same partitions: same answers for the remaining pairs
                        extra = len(ta_list) * len(tx_list) - 1
                        report.counts["instances"] = before + 1 + extra
                        report.counts["instances.solved"] += 1
                        discrete_pair = (key_a == _singletons(m) and key_x == _singletons(n))
                        if discrete_pair:
                            feasible = decide_continuous_biorder_representation(
                                B, ta_list[0], tx_list[0]).feasible
                            if feasible != ferrers:
                                report.fail("discrete_ferrers_iff_representable", inst, "")
    return report


def _singletons(k):
    return tuple(1 << i for i in range(k))


def _by_components(tops):
    groups: dict[tuple[int, ...], list[FiniteTopology]] = {}
    for T in tops:
        groups.setdefault(T.component_masks, []).append(T)
    return groups
