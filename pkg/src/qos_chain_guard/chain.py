"""The policy dependency-chain graph and its DOT/JSON exports.

The graph is the cell-for-cell transcription of the 16x16 dependency
matrix: one edge record per non-empty cell, keeping the cell's severity
and arrow direction exactly as published (mirror cells are not
reconciled).  Nodes carry the lifecycle phases each policy touches.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .rules import Severity


class EdgeDirection(enum.Enum):
    FORWARD = "forward"  # row policy -> column policy
    REVERSE = "reverse"  # column policy -> row policy
    BIDIRECTIONAL = "bidirectional"


@dataclass(frozen=True)
class PolicyNode:
    abbreviation: str
    policy_name: str
    discovery: bool
    data_exchange: bool
    disassociation: bool

    @property
    def lifecycle(self) -> tuple[str, ...]:
        phases = []
        if self.discovery:
            phases.append("discovery")
        if self.data_exchange:
            phases.append("data-exchange")
        if self.disassociation:
            phases.append("disassociation")
        return tuple(phases)


@dataclass(frozen=True)
class ChainEdge:
    """One non-empty matrix cell: row policy x column policy."""

    source: str
    target: str
    severity: Severity
    direction: EdgeDirection


POLICY_NODES: tuple[PolicyNode, ...] = (
    PolicyNode("ENTFAC", "ENTITY_FACTORY", True, False, False),
    PolicyNode("PART", "PARTITION", True, False, False),
    PolicyNode("USRDATA", "USER_DATA", True, False, False),
    PolicyNode("GRPDATA", "GROUP_DATA", True, False, False),
    PolicyNode("TOPDATA", "TOPIC_DATA", True, False, False),
    PolicyNode("RELIAB", "RELIABILITY", True, True, True),
    PolicyNode("DURABL", "DURABILITY", True, True, True),
    PolicyNode("DEADLN", "DEADLINE", True, True, False),
    PolicyNode("LIVENS", "LIVELINESS", True, True, True),
    PolicyNode("HIST", "HISTORY", False, True, False),
    PolicyNode("RESLIM", "RESOURCE_LIMITS", False, True, False),
    PolicyNode("LFSPAN", "LIFESPAN", False, True, False),
    PolicyNode("OWNST", "OWNERSHIP (+STRENGTH)", True, True, True),
    PolicyNode("DESTORD", "DESTINATION_ORDER", True, True, False),
    PolicyNode("WDLIFE", "WRITER_DATA_LIFECYCLE", False, False, True),
    PolicyNode("RDLIFE", "READER_DATA_LIFECYCLE", False, False, True),
)

_CRIT = Severity.CRITICAL
_COND = Severity.CONDITIONAL
_INCI = Severity.INCIDENTAL
_FWD = EdgeDirection.FORWARD
_REV = EdgeDirection.REVERSE
_BI = EdgeDirection.BIDIRECTIONAL

# Row-major transcription of the non-empty matrix cells.
CHAIN_EDGES: tuple[ChainEdge, ...] = (
    # ENTFAC row
    ChainEdge("ENTFAC", "DURABL", _INCI, _FWD),
    # PART row
    ChainEdge("PART", "PART", _CRIT, _BI),
    ChainEdge("PART", "DURABL", _INCI, _FWD),
    ChainEdge("PART", "DEADLN", _INCI, _FWD),
    ChainEdge("PART", "LIVENS", _INCI, _FWD),
    # USRDATA, GRPDATA, TOPDATA rows are empty: discovery-only metadata
    # policies depend on nothing.
    # RELIAB row
    ChainEdge("RELIAB", "RELIAB", _CRIT, _BI),
    ChainEdge("RELIAB", "DURABL", _CRIT, _FWD),
    ChainEdge("RELIAB", "DEADLN", _COND, _FWD),
    ChainEdge("RELIAB", "LIVENS", _COND, _FWD),
    ChainEdge("RELIAB", "HIST", _COND, _REV),
    ChainEdge("RELIAB", "RESLIM", _COND, _REV),
    ChainEdge("RELIAB", "LFSPAN", _COND, _REV),
    ChainEdge("RELIAB", "OWNST", _CRIT, _FWD),
    ChainEdge("RELIAB", "WDLIFE", _COND, _FWD),
    # DURABL row
    ChainEdge("DURABL", "ENTFAC", _INCI, _REV),
    ChainEdge("DURABL", "PART", _INCI, _REV),
    ChainEdge("DURABL", "RELIAB", _CRIT, _REV),
    ChainEdge("DURABL", "DURABL", _CRIT, _BI),
    ChainEdge("DURABL", "DEADLN", _INCI, _FWD),
    ChainEdge("DURABL", "HIST", _COND, _REV),
    ChainEdge("DURABL", "RESLIM", _COND, _REV),
    ChainEdge("DURABL", "LFSPAN", _COND, _REV),
    ChainEdge("DURABL", "RDLIFE", _INCI, _REV),
    # DEADLN row
    ChainEdge("DEADLN", "PART", _INCI, _REV),
    ChainEdge("DEADLN", "RELIAB", _COND, _REV),
    ChainEdge("DEADLN", "DURABL", _INCI, _REV),
    ChainEdge("DEADLN", "DEADLN", _CRIT, _BI),
    ChainEdge("DEADLN", "LIVENS", _COND, _REV),
    ChainEdge("DEADLN", "OWNST", _COND, _FWD),
    # LIVENS row
    ChainEdge("LIVENS", "PART", _INCI, _REV),
    ChainEdge("LIVENS", "RELIAB", _COND, _REV),
    ChainEdge("LIVENS", "DEADLN", _COND, _FWD),
    ChainEdge("LIVENS", "LIVENS", _CRIT, _BI),
    ChainEdge("LIVENS", "OWNST", _COND, _FWD),
    ChainEdge("LIVENS", "RDLIFE", _COND, _FWD),
    # HIST row
    ChainEdge("HIST", "RELIAB", _COND, _FWD),
    ChainEdge("HIST", "DURABL", _COND, _FWD),
    ChainEdge("HIST", "RESLIM", _CRIT, _BI),
    ChainEdge("HIST", "LFSPAN", _COND, _BI),
    ChainEdge("HIST", "DESTORD", _COND, _BI),
    # RESLIM row
    ChainEdge("RESLIM", "RELIAB", _COND, _FWD),
    ChainEdge("RESLIM", "DURABL", _COND, _FWD),
    ChainEdge("RESLIM", "HIST", _CRIT, _BI),
    ChainEdge("RESLIM", "RESLIM", _CRIT, _BI),
    ChainEdge("RESLIM", "LFSPAN", _COND, _BI),
    ChainEdge("RESLIM", "DESTORD", _COND, _FWD),
    # LFSPAN row
    ChainEdge("LFSPAN", "RELIAB", _COND, _FWD),
    ChainEdge("LFSPAN", "DURABL", _COND, _FWD),
    ChainEdge("LFSPAN", "HIST", _COND, _BI),
    ChainEdge("LFSPAN", "RESLIM", _COND, _BI),
    # OWNST row
    ChainEdge("OWNST", "RELIAB", _CRIT, _REV),
    ChainEdge("OWNST", "DEADLN", _COND, _REV),
    ChainEdge("OWNST", "LIVENS", _COND, _REV),
    ChainEdge("OWNST", "OWNST", _CRIT, _BI),
    ChainEdge("OWNST", "WDLIFE", _INCI, _FWD),
    # DESTORD row
    ChainEdge("DESTORD", "HIST", _COND, _REV),
    ChainEdge("DESTORD", "RESLIM", _COND, _REV),
    ChainEdge("DESTORD", "DESTORD", _CRIT, _BI),
    # WDLIFE row
    ChainEdge("WDLIFE", "RELIAB", _COND, _REV),
    ChainEdge("WDLIFE", "OWNST", _INCI, _REV),
    ChainEdge("WDLIFE", "RDLIFE", _COND, _FWD),
    # RDLIFE row
    ChainEdge("RDLIFE", "DURABL", _INCI, _FWD),
    ChainEdge("RDLIFE", "LIVENS", _COND, _REV),
    ChainEdge("RDLIFE", "WDLIFE", _COND, _REV),
)


@dataclass(frozen=True)
class ChainGraph:
    nodes: tuple[PolicyNode, ...]
    edges: tuple[ChainEdge, ...]

    def directed_edges(self) -> tuple[tuple[str, str, Severity], ...]:
        """Unique (source, target, severity) triples implied by the cells.

        Forward cells point row->column, reverse cells column->row, and
        bidirectional cells contribute both; exact duplicates (each pair of
        mirror cells names the same dependency) collapse to one.
        """
        seen: set[tuple[str, str, Severity]] = set()
        ordered: list[tuple[str, str, Severity]] = []
        for edge in self.edges:
            if edge.direction is EdgeDirection.FORWARD:
                arrows = [(edge.source, edge.target)]
            elif edge.direction is EdgeDirection.REVERSE:
                arrows = [(edge.target, edge.source)]
            else:
                arrows = [(edge.source, edge.target), (edge.target, edge.source)]
            for source, target in arrows:
                triple = (source, target, edge.severity)
                if triple not in seen:
                    seen.add(triple)
                    ordered.append(triple)
        return tuple(ordered)


def chain_graph() -> ChainGraph:
    return ChainGraph(nodes=POLICY_NODES, edges=CHAIN_EDGES)


_EDGE_COLORS = {
    Severity.CRITICAL: "red",
    Severity.CONDITIONAL: "orange",
    Severity.INCIDENTAL: "gray",
}


def export_chain_graph(fmt: str = "dot") -> str:
    """Render the chain graph as Graphviz DOT or as JSON."""
    graph = chain_graph()
    if fmt == "json":
        payload = {
            "nodes": [
                {
                    "abbreviation": node.abbreviation,
                    "policy": node.policy_name,
                    "lifecycle": list(node.lifecycle),
                }
                for node in graph.nodes
            ],
            "edges": [
                {
                    "source": edge.source,
                    "target": edge.target,
                    "severity": edge.severity.value,
                    "direction": edge.direction.value,
                }
                for edge in graph.edges
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt != "dot":
        raise ValueError(f"unknown graph format {fmt!r} (expected dot or json)")

    lines = [
        "digraph qos_policy_chain {",
        "  rankdir=LR;",
        '  node [shape=box, style=rounded, fontname="Helvetica"];',
    ]
    for node in graph.nodes:
        phases = ",".join(node.lifecycle)
        lines.append(
            f'  {node.abbreviation} [label="{node.abbreviation}", tooltip="{node.policy_name} ({phases})"];'
        )
    directed = graph.directed_edges()
    directed_set = set(directed)
    emitted: set[tuple[str, str, Severity]] = set()
    for source, target, severity in directed:
        if (source, target, severity) in emitted:
            continue
        color = _EDGE_COLORS[severity]
        if source == target:
            lines.append(f"  {source} -> {target} [color={color}, dir=both];")
            emitted.add((source, target, severity))
        elif (target, source, severity) in directed_set:
            lines.append(f"  {source} -> {target} [color={color}, dir=both];")
            emitted.add((source, target, severity))
            emitted.add((target, source, severity))
        else:
            lines.append(f"  {source} -> {target} [color={color}];")
            emitted.add((source, target, severity))
    lines.append("}")
    return "\n".join(lines) + "\n"
