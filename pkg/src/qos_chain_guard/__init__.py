"""Offline dependency-chain linter for DDS DataWriter/DataReader QoS profiles.

Parses DDS-style XML profile documents, resolves OMG defaults, evaluates a
41-rule catalog of policy dependency violations across three stages
(per-endpoint consistency, writer/reader RxO compatibility, and
environment-dependent checks), and renders deterministic reports.
"""

from ._version import __version__
from .chain import ChainEdge, ChainGraph, EdgeDirection, PolicyNode, chain_graph, export_chain_graph
from .model import (
    Count,
    Duration,
    EndpointKind,
    EndpointProfile,
    HistoryKind,
    DestinationOrderKind,
    DurabilityKind,
    LivelinessKind,
    Ordering,
    OwnershipKind,
    QosProfile,
    ReliabilityKind,
    SourceLocation,
    compare_duration,
    default_qos,
    format_duration,
    kind_ge,
    resolve_defaults,
)
from .pipeline import (
    EnvironmentLoadError,
    EnvironmentModel,
    PairOrigin,
    Pairing,
    PairingError,
    Report,
    build_pairing_plan,
    load_environment,
    render_report,
    run_pipeline,
    suggest_fix,
)
from .profiles import (
    ParseDiagnostic,
    ProfileDocument,
    ProfileLoadError,
    ProfileSet,
    load_profile_files,
    parse_document,
    parse_profiles,
    serialize_canonical,
)
from .rules import (
    CleanCheck,
    EvalContext,
    Rule,
    RuleScope,
    Severity,
    SkipReason,
    SkippedRule,
    Violation,
    evaluate_pair_rules,
    evaluate_rule,
    rule_catalog,
)

__all__ = [
    "__version__",
    "ChainEdge",
    "ChainGraph",
    "CleanCheck",
    "Count",
    "DestinationOrderKind",
    "DurabilityKind",
    "Duration",
    "EdgeDirection",
    "EndpointKind",
    "EndpointProfile",
    "EnvironmentLoadError",
    "EnvironmentModel",
    "EvalContext",
    "HistoryKind",
    "LivelinessKind",
    "Ordering",
    "OwnershipKind",
    "PairOrigin",
    "Pairing",
    "PairingError",
    "ParseDiagnostic",
    "PolicyNode",
    "ProfileDocument",
    "ProfileLoadError",
    "ProfileSet",
    "QosProfile",
    "ReliabilityKind",
    "Report",
    "Rule",
    "RuleScope",
    "Severity",
    "SkipReason",
    "SkippedRule",
    "SourceLocation",
    "Violation",
    "build_pairing_plan",
    "chain_graph",
    "compare_duration",
    "default_qos",
    "evaluate_pair_rules",
    "evaluate_rule",
    "export_chain_graph",
    "format_duration",
    "kind_ge",
    "load_environment",
    "load_profile_files",
    "parse_document",
    "parse_profiles",
    "render_report",
    "resolve_defaults",
    "rule_catalog",
    "run_pipeline",
    "serialize_canonical",
    "suggest_fix",
]
