"""Three-stage validation pipeline, report assembly, and rendering.

Stage 1 checks every endpoint on its own, stage 2 checks writer/reader
pairs from the pairing plan, stage 3 re-checks endpoints against the
environment assumptions.  All stages always run; staging orders the
report, it never short-circuits it.  Reports are deterministic: same
inputs, byte-identical output.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from ._version import __version__
from .model import (
    Duration,
    EndpointKind,
    MAX_BLOCKING_TIME_ASSUMPTION,
    NANOSECONDS_PER_MILLISECOND,
)
from .profiles import ParseDiagnostic, ProfileSet
from .rules import (
    Outcome,
    SkippedRule,
    Violation,
    evaluate_endpoint_rules,
    evaluate_pair_rules,
)


class EnvironmentLoadError(ValueError):
    """Bad environment file: wrong JSON shape or nonpositive duration."""


class PairingError(ValueError):
    """Bad pairing directive: unknown profile or kind mismatch."""


def _ms_to_duration(value: object, label: str) -> Duration:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise EnvironmentLoadError(f"{label}: expected a number of milliseconds, got {value!r}")
    # json.loads accepts the Infinity/NaN literals; both are invalid here.
    if not math.isfinite(value) or value <= 0:
        raise EnvironmentLoadError(f"{label}: must be positive and finite, got {value!r}")
    return Duration.from_millis(value)


def _duration_to_ms(d: Duration) -> int | float:
    ms = d.nanoseconds / NANOSECONDS_PER_MILLISECOND
    return int(ms) if ms.is_integer() else ms


@dataclass(frozen=True)
class EnvironmentModel:
    """Deployment assumptions: round-trip time and publish periods.

    All values are optional; rules that need a missing value are reported
    as skipped rather than guessed.  Present values must be finite and
    positive.
    """

    rtt: Duration | None = None
    default_publish_period: Duration | None = None
    per_profile_publish_period: dict[str, Duration] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label, value in self._named_durations():
            if value.is_infinite:
                raise EnvironmentLoadError(f"{label}: must be finite")
            if value.nanoseconds <= 0:
                raise EnvironmentLoadError(f"{label}: must be positive")

    def _named_durations(self):
        if self.rtt is not None:
            yield "rtt", self.rtt
        if self.default_publish_period is not None:
            yield "default_publish_period", self.default_publish_period
        for name, value in self.per_profile_publish_period.items():
            yield f"publish_period[{name}]", value

    def publish_period_for(self, profile_name: str) -> Duration | None:
        """Per-profile override, else the default, else None (skip)."""
        return self.per_profile_publish_period.get(profile_name, self.default_publish_period)

    def echo(self) -> dict:
        """Millisecond echo of the model for reports."""
        return {
            "rtt_ms": _duration_to_ms(self.rtt) if self.rtt is not None else None,
            "default_publish_period_ms": (
                _duration_to_ms(self.default_publish_period)
                if self.default_publish_period is not None
                else None
            ),
            "publish_period_ms": {
                name: _duration_to_ms(value)
                for name, value in sorted(self.per_profile_publish_period.items())
            },
        }


def load_environment(text: str) -> EnvironmentModel:
    """Parse the environment JSON document.

    Accepted shape: {"rtt_ms": number, "default_publish_period_ms": number,
    "publish_period_ms": {profile_name: number}}; every key optional.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnvironmentLoadError(f"environment file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise EnvironmentLoadError("environment file must contain a JSON object")
    known = {"rtt_ms", "default_publish_period_ms", "publish_period_ms"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise EnvironmentLoadError(f"unknown environment keys: {', '.join(unknown)}")
    rtt = _ms_to_duration(data["rtt_ms"], "rtt_ms") if "rtt_ms" in data else None
    default_pp = (
        _ms_to_duration(data["default_publish_period_ms"], "default_publish_period_ms")
        if "default_publish_period_ms" in data
        else None
    )
    per_profile: dict[str, Duration] = {}
    if "publish_period_ms" in data:
        table = data["publish_period_ms"]
        if not isinstance(table, dict):
            raise EnvironmentLoadError("publish_period_ms: expected an object of profile -> ms")
        for name, value in table.items():
            per_profile[name] = _ms_to_duration(value, f"publish_period_ms[{name}]")
    return EnvironmentModel(
        rtt=rtt, default_publish_period=default_pp, per_profile_publish_period=per_profile
    )


class PairOrigin(enum.Enum):
    TOPIC_INDEX = "topic-index"
    EXPLICIT_DIRECTIVE = "directive"


@dataclass(frozen=True)
class Pairing:
    writer: str
    reader: str
    origin: PairOrigin
    topic_name: str | None


def build_pairing_plan(
    profile_set: ProfileSet, directives: Sequence[tuple[str, str]] = ()
) -> tuple[Pairing, ...]:
    """Cross every topic's writers with its readers, then add directives.

    Endpoints without a topic pair only through explicit directives.
    Duplicate pairs collapse; a directive naming a missing profile or a
    kind-mismatched pair raises PairingError.
    """
    plan: list[Pairing] = []
    seen: set[tuple[str, str]] = set()
    index = profile_set.topic_index
    for topic in sorted(t for t in index if t is not None):
        writers, readers = index[topic]
        for writer in writers:
            for reader in readers:
                plan.append(Pairing(writer, reader, PairOrigin.TOPIC_INDEX, topic))
                seen.add((writer, reader))
    for writer_name, reader_name in directives:
        for name in (writer_name, reader_name):
            if name not in profile_set.profiles:
                raise PairingError(f"pair directive names unknown profile {name!r}")
        writer = profile_set.profiles[writer_name]
        reader = profile_set.profiles[reader_name]
        if writer.endpoint_kind is not EndpointKind.DATA_WRITER:
            raise PairingError(
                f"pair directive must be writer:reader; {writer_name!r} is a {writer.endpoint_kind.display}"
            )
        if reader.endpoint_kind is not EndpointKind.DATA_READER:
            raise PairingError(
                f"pair directive must be writer:reader; {reader_name!r} is a {reader.endpoint_kind.display}"
            )
        if (writer_name, reader_name) in seen:
            continue
        topic = writer.topic_name if writer.topic_name == reader.topic_name else None
        plan.append(Pairing(writer_name, reader_name, PairOrigin.EXPLICIT_DIRECTIVE, topic))
        seen.add((writer_name, reader_name))
    return tuple(plan)


@dataclass(frozen=True)
class Report:
    """Aggregate of one validation run, ordered deterministically."""

    tool_version: str
    inputs: tuple[str, ...]
    environment: EnvironmentModel
    assumptions: tuple[str, ...]
    pairings: tuple[Pairing, ...]
    parse_diagnostics: tuple[ParseDiagnostic, ...]
    violations: tuple[Violation, ...]
    skipped: tuple[SkippedRule, ...]

    @property
    def summary(self) -> dict[str, int]:
        levels = [v.severity.level for v in self.violations]
        return {
            "errors": levels.count("error"),
            "warnings": levels.count("warning"),
            "infos": levels.count("info"),
            "skipped": len(self.skipped),
        }

    def count_at_or_above(self, level: str) -> int:
        """Diagnostics at or above a report level (error > warning > info)."""
        included = {"error": ("error",), "warning": ("error", "warning")}.get(
            level, ("error", "warning", "info")
        )
        return sum(1 for v in self.violations if v.severity.level in included)


def _sort_key(outcome: Violation | SkippedRule):
    return (
        outcome.stage,
        outcome.rule_id,
        outcome.entities[0].profile_name,
        getattr(outcome, "topic_name", None) or "",
        tuple(e.profile_name for e in outcome.entities),
    )


def run_pipeline(
    profile_set: ProfileSet,
    environment: EnvironmentModel | None = None,
    pairings: tuple[Pairing, ...] | None = None,
    inputs: tuple[str, ...] = (),
) -> Report:
    """Run all three stages over the profile set and assemble the report."""
    env = environment if environment is not None else EnvironmentModel()
    plan = pairings if pairings is not None else build_pairing_plan(profile_set)

    outcomes: list[Outcome] = []
    endpoints = [profile_set.profiles[name] for name in sorted(profile_set.profiles)]
    for endpoint in endpoints:
        pp = env.publish_period_for(endpoint.profile_name)
        outcomes.extend(evaluate_endpoint_rules(endpoint, 1, rtt=env.rtt, pp=pp))
    for pairing in plan:
        writer = profile_set.profiles[pairing.writer]
        reader = profile_set.profiles[pairing.reader]
        outcomes.extend(evaluate_pair_rules(writer, reader))
    for endpoint in endpoints:
        pp = env.publish_period_for(endpoint.profile_name)
        outcomes.extend(evaluate_endpoint_rules(endpoint, 3, rtt=env.rtt, pp=pp))

    violations = tuple(sorted((o for o in outcomes if isinstance(o, Violation)), key=_sort_key))
    skipped = tuple(sorted((o for o in outcomes if isinstance(o, SkippedRule)), key=_sort_key))
    return Report(
        tool_version=__version__,
        inputs=tuple(inputs),
        environment=env,
        assumptions=(MAX_BLOCKING_TIME_ASSUMPTION,),
        pairings=plan,
        parse_diagnostics=profile_set.diagnostics,
        violations=violations,
        skipped=skipped,
    )


def suggest_fix(violation: Violation) -> str:
    """The corrective suggestion rendered for a violation."""
    return violation.suggestion


# -- rendering ---------------------------------------------------------------

_STAGE_TITLES = {
    1: "Stage 1: per-endpoint consistency",
    2: "Stage 2: writer/reader compatibility (RxO)",
    3: "Stage 3: environment-dependent checks",
}

_ANSI = {"error": "\x1b[31m", "warning": "\x1b[33m", "info": "\x1b[36m"}
_ANSI_RESET = "\x1b[0m"


def _entity_list(entities) -> str:
    return " + ".join(str(e) for e in entities)


def _human_report(report: Report, color: bool) -> str:
    lines: list[str] = []
    env = report.environment.echo()
    if report.inputs:
        lines.append(f"inputs: {', '.join(report.inputs)}")
    env_bits = []
    if env["rtt_ms"] is not None:
        env_bits.append(f"rtt={env['rtt_ms']}ms")
    if env["default_publish_period_ms"] is not None:
        env_bits.append(f"default publish period={env['default_publish_period_ms']}ms")
    for name, value in env["publish_period_ms"].items():
        env_bits.append(f"publish period[{name}]={value}ms")
    lines.append(f"environment: {', '.join(env_bits) if env_bits else 'none provided'}")
    for assumption in report.assumptions:
        lines.append(f"note: {assumption}")
    lines.append("")

    if not report.violations:
        lines.append("no violations found")
    else:
        for stage in (1, 2, 3):
            stage_violations = [v for v in report.violations if v.stage == stage]
            if not stage_violations:
                continue
            lines.append(_STAGE_TITLES[stage])
            for v in stage_violations:
                level = v.severity.level.upper()
                if color:
                    level = f"{_ANSI[v.severity.level]}{level}{_ANSI_RESET}"
                lines.append(
                    f"  {level} [rule {v.rule_id} {v.identifier}] {_entity_list(v.entities)} "
                    f"— {v.message}; {v.suggestion}"
                )
            lines.append("")

    if report.skipped:
        lines.append("skipped checks (undecidable with the given inputs)")
        for s in report.skipped:
            lines.append(
                f"  SKIP [rule {s.rule_id} {s.identifier}] {_entity_list(s.entities)} "
                f"— {s.reason.value}"
            )
        lines.append("")

    if report.parse_diagnostics:
        lines.append("parse notes")
        for diagnostic in report.parse_diagnostics:
            lines.append(f"  {diagnostic}")
        lines.append("")

    counts = report.summary
    lines.append(
        f"summary: {counts['errors']} error(s), {counts['warnings']} warning(s), "
        f"{counts['infos']} info(s), {counts['skipped']} skipped"
    )
    return "\n".join(lines) + "\n"


def _json_report(report: Report) -> str:
    payload = {
        "schema_version": 1,
        "tool": {"name": "qos-chain-guard", "version": report.tool_version},
        "inputs": list(report.inputs),
        "environment": report.environment.echo(),
        "assumptions": list(report.assumptions),
        "pairs": [
            {
                "writer": p.writer,
                "reader": p.reader,
                "origin": p.origin.value,
                "topic": p.topic_name,
            }
            for p in report.pairings
        ],
        "parse_diagnostics": [
            {"path": d.path, "line": d.line, "level": d.level, "message": d.message}
            for d in report.parse_diagnostics
        ],
        "diagnostics": [
            {
                "rule_id": v.rule_id,
                "identifier": v.identifier,
                "stage": v.stage,
                "severity": v.severity.value,
                "level": v.severity.level,
                "entities": [
                    {
                        "profile": e.profile_name,
                        "kind": e.endpoint_kind.display,
                        "document": e.source_location.document,
                        "line": e.source_location.line,
                    }
                    for e in v.entities
                ],
                "topic": v.topic_name,
                "message": v.message,
                "suggestion": v.suggestion,
            }
            for v in report.violations
        ],
        "skipped": [
            {
                "rule_id": s.rule_id,
                "identifier": s.identifier,
                "stage": s.stage,
                "entities": [
                    {
                        "profile": e.profile_name,
                        "kind": e.endpoint_kind.display,
                        "document": e.source_location.document,
                        "line": e.source_location.line,
                    }
                    for e in s.entities
                ],
                "reason": s.reason.value,
            }
            for s in report.skipped
        ],
        "summary": report.summary,
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_report(report: Report, fmt: str = "human", color: bool = False) -> str:
    """Render a report as human-readable text or as stable JSON."""
    if fmt == "human":
        return _human_report(report, color=color)
    if fmt == "json":
        return _json_report(report)
    raise ValueError(f"unknown report format {fmt!r} (expected human or json)")
