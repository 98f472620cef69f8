"""Shared node-link document model replicated across devices."""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

NODE_ENTITY = "entity"
NODE_TIME = "time"
NODE_ANCHOR = "documentAnchor"

LINK_USER = "user"
LINK_DOCUMENT_DEFAULT = "documentDefault"

# Presentation rule, not state: entity nodes render blue, time nodes
# orange, document anchors black.
NODE_COLORS = {NODE_ENTITY: "blue", NODE_TIME: "orange", NODE_ANCHOR: "black"}


def anchor_id_for(document_id):
    return f"anchor:{document_id}"


@dataclass
class NodeRecord:
    id: str
    label: str
    kind: str
    position3: tuple = (0.0, 0.0, 0.0)
    parsed_time: Optional[datetime] = None
    source_document_ids: set = field(default_factory=set)
    created_by_device: str = ""
    revision: int = 0

    def copy(self):
        return NodeRecord(
            id=self.id, label=self.label, kind=self.kind,
            position3=tuple(self.position3), parsed_time=self.parsed_time,
            source_document_ids=set(self.source_document_ids),
            created_by_device=self.created_by_device, revision=self.revision,
        )


@dataclass
class LinkRecord:
    id: str
    source_id: str
    target_id: str
    label: str = ""
    kind: str = LINK_USER
    revision: int = 0

    def endpoints(self):
        """Unordered endpoint pair; link direction is presentational only."""
        return frozenset((self.source_id, self.target_id))

    def copy(self):
        return LinkRecord(
            id=self.id, source_id=self.source_id, target_id=self.target_id,
            label=self.label, kind=self.kind, revision=self.revision,
        )


@dataclass
class SelectionState:
    selected_document_id: Optional[str] = None
    selected_node_ids: set = field(default_factory=set)
    last_origin_device: str = ""
    seq: int = 0

    def copy(self):
        return SelectionState(
            selected_document_id=self.selected_document_id,
            selected_node_ids=set(self.selected_node_ids),
            last_origin_device=self.last_origin_device, seq=self.seq,
        )


@dataclass
class DocumentRecord:
    id: str
    title: str
    body: str
    subplot: str = ""

    @property
    def word_count(self):
        return len(self.body.split())


@dataclass
class GraphState:
    nodes: dict = field(default_factory=dict)
    links: dict = field(default_factory=dict)
    selections: SelectionState = field(default_factory=SelectionState)
    seq: int = 0

    def copy(self):
        return GraphState(
            nodes={nid: n.copy() for nid, n in self.nodes.items()},
            links={lid: l.copy() for lid, l in self.links.items()},
            selections=self.selections.copy(), seq=self.seq,
        )

    def links_of(self, node_id):
        return [l for l in self.links.values()
                if node_id in (l.source_id, l.target_id)]

    def find_link(self, endpoint_a, endpoint_b, label):
        pair = frozenset((endpoint_a, endpoint_b))
        for link in self.links.values():
            if link.endpoints() == pair and link.label == label:
                return link
        return None

    def check_integrity(self):
        """Full-scan invariant check; used by tests, cheap at session scale."""
        for link in self.links.values():
            assert link.source_id in self.nodes, f"dangling source {link.id}"
            assert link.target_id in self.nodes, f"dangling target {link.id}"
            assert link.source_id != link.target_id, f"self-loop {link.id}"
        seen = set()
        for link in self.links.values():
            key = (link.endpoints(), link.label)
            assert key not in seen, f"duplicate link {link.id}"
            seen.add(key)
        assert self.selections.selected_node_ids <= set(self.nodes)
