"""Rule catalog completeness and per-rule evaluation semantics."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from qos_chain_guard.model import (
    Count,
    DestinationOrderKind,
    DurabilityKind,
    Duration,
    HistoryKind,
    LivelinessKind,
    OwnershipKind,
    ReliabilityKind,
)
from qos_chain_guard.rules import (
    CleanCheck,
    EvalContext,
    RuleScope,
    Severity,
    SkipReason,
    SkippedRule,
    Violation,
    evaluate_pair_rules,
    evaluate_rule,
    get_rule,
    rule_catalog,
)

from catalog_fixture import EXPECTED_CATALOG, EXPECTED_ENV
from rule_fixtures import RULE_FIXTURES, Case
from support import (
    INF,
    durability,
    hist,
    lifespan,
    liveliness,
    ms,
    reader,
    reliability,
    reslim,
    writer,
)


def context_for(rule, case: Case) -> EvalContext:
    """Build the evaluation context a fixture case describes."""
    rtt = ms(case.rtt_ms) if case.rtt_ms is not None else None
    pp = ms(case.pp_ms) if case.pp_ms is not None else None
    if rule.scope is RuleScope.PAIR:
        return EvalContext(
            writer=writer(**case.writer), reader=reader(**case.reader), rtt=rtt, pp=pp
        )
    if case.writer:
        return EvalContext(writer=writer(**case.writer), rtt=rtt, pp=pp)
    return EvalContext(reader=reader(**case.reader), rtt=rtt, pp=pp)


# -- catalog shape ------------------------------------------------------------


def test_catalog_is_complete_and_matches_the_transcription():
    catalog = rule_catalog()
    assert [rule.id for rule in catalog] == list(range(1, 42))
    for rule in catalog:
        identifier, stage, severity, scope = EXPECTED_CATALOG[rule.id]
        assert rule.identifier == identifier, f"rule {rule.id} identifier"
        assert rule.stage == stage, f"rule {rule.id} stage"
        assert rule.severity.value == severity, f"rule {rule.id} severity"
        assert rule.scope.value == scope, f"rule {rule.id} scope"


def test_catalog_env_requirements():
    for rule in rule_catalog():
        assert rule.requires_env == frozenset(EXPECTED_ENV[rule.id]), f"rule {rule.id}"


def test_severity_maps_to_report_levels():
    assert Severity.CRITICAL.level == "error"
    assert Severity.CONDITIONAL.level == "warning"
    assert Severity.INCIDENTAL.level == "info"


def test_duplicate_identifier_rows_stay_distinct():
    pairs = [(11, 36), (12, 37), (6, 39), (7, 40)]
    for a, b in pairs:
        ra, rb = get_rule(a), get_rule(b)
        assert ra.identifier == rb.identifier
        assert (ra.stage, ra.condition) != (rb.stage, rb.condition)


# -- per-rule fixtures ---------------------------------------------------------


def test_every_rule_has_a_fixture_pair():
    assert sorted(RULE_FIXTURES) == list(range(1, 42))


@pytest.mark.parametrize("rule_id", sorted(RULE_FIXTURES))
def test_violating_fixture_fires_at_catalog_severity(rule_id):
    rule = get_rule(rule_id)
    violating, _ = RULE_FIXTURES[rule_id]
    outcome = evaluate_rule(rule, context_for(rule, violating))
    assert isinstance(outcome, Violation), f"rule {rule_id} should fire"
    assert outcome.rule_id == rule_id
    assert outcome.severity is rule.severity
    assert outcome.message and outcome.suggestion


@pytest.mark.parametrize("rule_id", sorted(RULE_FIXTURES))
def test_flipped_twin_is_clean(rule_id):
    rule = get_rule(rule_id)
    _, clean = RULE_FIXTURES[rule_id]
    outcome = evaluate_rule(rule, context_for(rule, clean))
    assert isinstance(outcome, CleanCheck), f"rule {rule_id} twin should be clean"


def test_evaluation_is_deterministic():
    rule = get_rule(29)
    violating, _ = RULE_FIXTURES[29]
    ctx = context_for(rule, violating)
    assert evaluate_rule(rule, ctx) == evaluate_rule(rule, ctx)


# -- RxO ordering sweeps ------------------------------------------------------


@pytest.mark.parametrize(
    "rule_id,kinds,policy",
    [
        (21, ReliabilityKind, "reliability"),
        (22, DurabilityKind, "durability"),
        (26, DestinationOrderKind, "destination_order"),
    ],
)
def test_rxo_kind_matrix(rule_id, kinds, policy):
    from support import destination_order as mk_destord

    builders = {
        "reliability": lambda k: {"reliability": reliability(k)},
        "durability": lambda k: {"durability": durability(k)},
        "destination_order": lambda k: {"destination_order": mk_destord(k)},
    }
    rule = get_rule(rule_id)
    for offered, requested in itertools.product(kinds, kinds):
        ctx = EvalContext(
            writer=writer(**builders[policy](offered)),
            reader=reader(**builders[policy](requested)),
        )
        outcome = evaluate_rule(rule, ctx)
        if offered < requested:
            assert isinstance(outcome, Violation), (offered, requested)
        else:
            assert isinstance(outcome, CleanCheck), (offered, requested)


def test_rxo_liveliness_kind_matrix():
    rule = get_rule(24)
    for offered, requested in itertools.product(LivelinessKind, LivelinessKind):
        ctx = EvalContext(
            writer=writer(liveliness=liveliness(offered, lease=INF)),
            reader=reader(liveliness=liveliness(requested, lease=INF)),
        )
        outcome = evaluate_rule(rule, ctx)
        if offered < requested:
            assert isinstance(outcome, Violation), (offered, requested)
        else:
            assert isinstance(outcome, CleanCheck), (offered, requested)


def test_rxo_asymmetry_swapping_endpoints_clears_the_violation():
    for rule_id in (21, 22, 24, 26):
        rule = get_rule(rule_id)
        violating, _ = RULE_FIXTURES[rule_id]
        swapped = EvalContext(
            writer=writer(**violating.reader), reader=reader(**violating.writer)
        )
        assert isinstance(evaluate_rule(rule, swapped), CleanCheck), f"rule {rule_id}"


def test_symmetric_pair_rules_are_swap_invariant():
    for rule_id in (20, 25):
        rule = get_rule(rule_id)
        violating, clean = RULE_FIXTURES[rule_id]
        for case, expected in ((violating, Violation), (clean, CleanCheck)):
            swapped = EvalContext(
                writer=writer(**{k: v for k, v in case.reader.items()}),
                reader=reader(**{k: v for k, v in case.writer.items()}),
            )
            assert isinstance(evaluate_rule(rule, swapped), expected), f"rule {rule_id}"


# -- environment handling -----------------------------------------------------


def test_missing_env_skip_reasons():
    # Both inputs missing: rtt is reported first.
    w = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=1))
    outcome = evaluate_rule(get_rule(29), EvalContext(writer=w))
    assert outcome == SkippedRule(
        29, get_rule(29).identifier, 3, outcome.entities, SkipReason.MISSING_ENV_RTT
    )
    outcome = evaluate_rule(get_rule(29), EvalContext(writer=w, rtt=ms(100)))
    assert isinstance(outcome, SkippedRule)
    assert outcome.reason is SkipReason.MISSING_ENV_PP
    outcome = evaluate_rule(get_rule(29), EvalContext(writer=w, pp=ms(50)))
    assert outcome.reason is SkipReason.MISSING_ENV_RTT


def test_env_rules_skip_even_when_static_conjuncts_are_false():
    # Volatile durability can never violate rule 6, but without the
    # environment the check is still reported as skipped, not clean.
    w = writer(durability=durability(DurabilityKind.VOLATILE))
    outcome = evaluate_rule(get_rule(6), EvalContext(writer=w))
    assert isinstance(outcome, SkippedRule)


def test_infinite_lifespan_exemption_beats_env_and_predicate():
    w = writer(history=hist(depth=2))  # lifespan defaults to infinite
    for rule_id in (9, 10):
        outcome = evaluate_rule(get_rule(rule_id), EvalContext(writer=w, pp=ms(20)))
        assert isinstance(outcome, SkippedRule)
        assert outcome.reason is SkipReason.INFINITE_LIFESPAN_EXEMPTION
        outcome = evaluate_rule(get_rule(rule_id), EvalContext(writer=w))
        assert outcome.reason is SkipReason.INFINITE_LIFESPAN_EXEMPTION


def test_unlimited_max_samples_per_instance_semantics():
    # Unlimited can never sit below the floor (rules 7/30) but always sits
    # above it (rule 40).
    base = dict(
        durability=durability(DurabilityKind.TRANSIENT_LOCAL),
        history=hist(HistoryKind.KEEP_ALL),
        resource_limits=reslim(),
    )
    ctx = EvalContext(writer=writer(**base), rtt=ms(100), pp=ms(20))
    assert isinstance(evaluate_rule(get_rule(7), ctx), CleanCheck)
    assert isinstance(evaluate_rule(get_rule(40), ctx), Violation)


@given(
    depth=st.integers(1, 50),
    rtt1=st.integers(1, 10**6),
    bump=st.integers(0, 10**6),
    pp=st.integers(1, 10**6),
)
def test_rising_rtt_never_clears_a_violation(depth, rtt1, bump, pp):
    rule = get_rule(29)
    w = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=depth))
    low = evaluate_rule(rule, EvalContext(writer=w, rtt=Duration(rtt1), pp=Duration(pp)))
    high = evaluate_rule(rule, EvalContext(writer=w, rtt=Duration(rtt1 + bump), pp=Duration(pp)))
    if isinstance(low, Violation):
        assert isinstance(high, Violation)


@given(
    depth=st.integers(1, 50),
    rtt=st.integers(1, 10**6),
    pp1=st.integers(1, 10**6),
    bump=st.integers(0, 10**6),
)
def test_rising_pp_never_creates_a_violation(depth, rtt, pp1, bump):
    rule = get_rule(29)
    w = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=depth))
    low = evaluate_rule(rule, EvalContext(writer=w, rtt=Duration(rtt), pp=Duration(pp1)))
    high = evaluate_rule(rule, EvalContext(writer=w, rtt=Duration(rtt), pp=Duration(pp1 + bump)))
    if isinstance(low, CleanCheck):
        assert isinstance(high, CleanCheck)


def test_threshold_equality_is_clean_for_both_directions():
    # rtt=100ms, pp=20ms: floor is exactly 7.
    env = dict(rtt=ms(100), pp=ms(20))
    w29 = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=7))
    assert isinstance(evaluate_rule(get_rule(29), EvalContext(writer=w29, **env)), CleanCheck)
    w39 = writer(durability=durability(DurabilityKind.TRANSIENT_LOCAL), history=hist(depth=7))
    assert isinstance(evaluate_rule(get_rule(39), EvalContext(writer=w39, **env)), CleanCheck)


def test_exact_rational_comparison_no_float_drift():
    # rtt=1ms, pp=3ns: rtt/pp + 2 = 333335.33..; 333335 violates, 333336 not.
    env = dict(rtt=Duration(1_000_000), pp=Duration(3))
    for depth, expected in ((333335, Violation), (333336, CleanCheck)):
        w = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=depth))
        assert isinstance(evaluate_rule(get_rule(29), EvalContext(writer=w, **env)), expected)


# -- messages and suggestions --------------------------------------------------


def test_rule_1_suggestion_contains_computed_bound():
    violating, _ = RULE_FIXTURES[1]
    outcome = evaluate_rule(get_rule(1), context_for(get_rule(1), violating))
    assert "≥ 10" in outcome.suggestion
    assert "history.depth=10" in outcome.message
    assert "max_samples_per_instance=5" in outcome.message


def test_rule_29_suggestion_contains_floor():
    w = writer(reliability=reliability(ReliabilityKind.RELIABLE), history=hist(depth=2))
    outcome = evaluate_rule(get_rule(29), EvalContext(writer=w, rtt=ms(100), pp=ms(20)))
    assert "≥ 7" in outcome.suggestion


def test_rule_31_suggestion_names_rtt():
    violating, _ = RULE_FIXTURES[31]
    outcome = evaluate_rule(get_rule(31), context_for(get_rule(31), violating))
    assert "above 100ms" in outcome.suggestion


def test_rule_25_suggestion_wording():
    violating, _ = RULE_FIXTURES[25]
    outcome = evaluate_rule(get_rule(25), context_for(get_rule(25), violating))
    assert outcome.suggestion == "set both OWNERSHIP kinds identical"


def test_messages_name_the_values_that_fired():
    w = writer(
        durability=durability(DurabilityKind.TRANSIENT_LOCAL),
        lifespan=lifespan(ms(50)),
    )
    outcome = evaluate_rule(get_rule(8), EvalContext(writer=w, rtt=ms(100)))
    assert "TRANSIENT_LOCAL" in outcome.message
    assert "50ms" in outcome.message
    assert "100ms" in outcome.message


# -- scope contracts -----------------------------------------------------------


def test_scope_mismatch_is_a_programmer_error():
    with pytest.raises(ValueError):
        evaluate_rule(get_rule(19), EvalContext(reader=reader()))  # writer-scoped
    with pytest.raises(ValueError):
        evaluate_rule(get_rule(4), EvalContext(writer=writer()))  # reader-scoped
    with pytest.raises(ValueError):
        evaluate_rule(get_rule(20), EvalContext(writer=writer()))  # pair-scoped
    with pytest.raises(ValueError):
        evaluate_rule(get_rule(1), EvalContext(writer=writer(), reader=reader()))


def test_evaluate_pair_rules_covers_stage_two():
    outcomes = evaluate_pair_rules(writer(), reader())
    assert [o.rule_id for o in outcomes] == list(range(20, 28))
    assert all(isinstance(o, CleanCheck) for o in outcomes)


def test_evaluate_pair_rules_rejects_kind_mismatch():
    with pytest.raises(ValueError):
        evaluate_pair_rules(reader(), reader())
