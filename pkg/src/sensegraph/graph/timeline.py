"""Timeline derived from time nodes: sorted entries plus per-date groups."""

from dataclasses import dataclass, field

from ..errors import UnknownNode
from .model import NODE_TIME, SelectionState


@dataclass
class TimelineEntry:
    node_id: str
    timestamp: object  # aware datetime


@dataclass
class DateGroup:
    calendar_date: object  # datetime.date
    marker_position: float  # normalized [0,1] along the 1D axis
    member_node_ids: list = field(default_factory=list)


@dataclass
class TimelineModel:
    entries: list = field(default_factory=list)
    date_groups: list = field(default_factory=list)


def derive_timeline(graph):
    """Pure function: time nodes sorted by (timestamp, id), one date group
    per distinct calendar date."""
    time_nodes = [n for n in graph.nodes.values() if n.kind == NODE_TIME]
    time_nodes.sort(key=lambda n: (n.parsed_time, n.id))
    entries = [TimelineEntry(n.id, n.parsed_time) for n in time_nodes]

    groups = []
    by_date = {}
    for node in time_nodes:
        day = node.parsed_time.date()
        if day not in by_date:
            by_date[day] = DateGroup(day, 0.0)
            groups.append(by_date[day])
        by_date[day].member_node_ids.append(node.id)

    n = len(groups)
    for i, group in enumerate(groups):
        group.marker_position = 0.5 if n == 1 else i / (n - 1)
    return TimelineModel(entries=entries, date_groups=groups)


def select_timeline_entry(entry_or_group, graph, device=""):
    """Selection implied by picking one timeline entry or a whole date
    group; returns a fresh SelectionState (the caller replicates it)."""
    if isinstance(entry_or_group, TimelineEntry):
        node_ids = {entry_or_group.node_id}
    elif isinstance(entry_or_group, DateGroup):
        node_ids = set(entry_or_group.member_node_ids)
    else:
        node_ids = {str(entry_or_group)}
    for node_id in node_ids:
        if node_id not in graph.nodes:
            raise UnknownNode(node_id)
    return SelectionState(
        selected_document_id=graph.selections.selected_document_id,
        selected_node_ids=node_ids, last_origin_device=device,
        seq=graph.selections.seq,
    )
