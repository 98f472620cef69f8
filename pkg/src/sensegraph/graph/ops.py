"""Mutation operations on GraphState.

Every operation mutates the passed state in place and is deterministic;
ordering across devices is imposed upstream by the session server. Ids may
be supplied explicitly (replay, replica apply) or auto-assigned.
"""

import re

from ..errors import (
    AnchorImmutable, DuplicateLink, EmptyLabel, SelfLink, SelfMerge,
    UnknownLink, UnknownNode,
)
from .model import (
    LINK_DOCUMENT_DEFAULT, LINK_USER, NODE_ANCHOR, NODE_ENTITY, NODE_TIME,
    GraphState, LinkRecord, NodeRecord, anchor_id_for,
)
from .timeparse import parse_time_label

_NUM_SUFFIX = re.compile(r"^[nl](\d+)$")


def _next_id(existing, prefix):
    top = 0
    for ident in existing:
        m = _NUM_SUFFIX.match(ident)
        if m:
            top = max(top, int(m[1]))
    return f"{prefix}{top + 1}"


def _classify(label):
    parsed = parse_time_label(label)
    return (NODE_TIME, parsed) if parsed is not None else (NODE_ENTITY, None)


def _require_node(graph, node_id):
    node = graph.nodes.get(node_id)
    if node is None:
        raise UnknownNode(node_id)
    return node


def _require_mutable_node(graph, node_id):
    node = _require_node(graph, node_id)
    if node.kind == NODE_ANCHOR:
        raise AnchorImmutable(node_id)
    return node


def add_document_anchor(graph, document_id, title="", position3=(0.0, 0.0, 0.0),
                        device=""):
    """Create the system-owned anchor node for a document; idempotent."""
    node_id = anchor_id_for(document_id)
    if node_id not in graph.nodes:
        graph.nodes[node_id] = NodeRecord(
            id=node_id, label=title or document_id, kind=NODE_ANCHOR,
            position3=tuple(position3), source_document_ids={document_id},
            created_by_device=device,
        )
    return node_id


def create_node(graph, label, position3, device="", node_id=None, link_id=None):
    """Add a node; returns (node_id, default_link_id or None).

    If a document is selected, a documentDefault link to that document's
    anchor is added as well (the anchor is created on demand)."""
    if not label.strip():
        raise EmptyLabel(label)
    kind, parsed = _classify(label)
    if node_id is None:
        node_id = _next_id(graph.nodes, "n")
    doc_id = graph.selections.selected_document_id
    graph.nodes[node_id] = NodeRecord(
        id=node_id, label=label, kind=kind, position3=tuple(position3),
        parsed_time=parsed,
        source_document_ids={doc_id} if doc_id else set(),
        created_by_device=device,
    )
    default_link_id = None
    if doc_id:
        anchor = add_document_anchor(graph, doc_id)
        if link_id is None:
            link_id = _next_id(graph.links, "l")
        graph.links[link_id] = LinkRecord(
            id=link_id, source_id=node_id, target_id=anchor,
            kind=LINK_DOCUMENT_DEFAULT,
        )
        default_link_id = link_id
    return node_id, default_link_id


def update_node_label(graph, node_id, label):
    node = _require_mutable_node(graph, node_id)
    node.label = label
    node.kind, node.parsed_time = _classify(label)
    node.revision += 1


def move_node(graph, node_id, position3):
    node = _require_node(graph, node_id)
    node.position3 = tuple(position3)
    node.revision += 1


def delete_node(graph, node_id):
    _require_mutable_node(graph, node_id)
    del graph.nodes[node_id]
    for link in list(graph.links.values()):
        if node_id in (link.source_id, link.target_id):
            del graph.links[link.id]
    graph.selections.selected_node_ids.discard(node_id)


def merge_nodes(graph, survivor_id, absorbed_id):
    """Fold `absorbed` into `survivor`: links retargeted, self-loops and
    duplicate (endpoints, label) links dropped, source documents unioned.
    The survivor keeps its own label and kind."""
    if survivor_id == absorbed_id:
        raise SelfMerge(survivor_id)
    survivor = _require_node(graph, survivor_id)
    absorbed = _require_node(graph, absorbed_id)
    for node in (survivor, absorbed):
        if node.kind == NODE_ANCHOR:
            raise AnchorImmutable(node.id)

    for link in list(graph.links.values()):
        if absorbed_id not in (link.source_id, link.target_id):
            continue
        other = link.target_id if link.source_id == absorbed_id else link.source_id
        if other == survivor_id:
            del graph.links[link.id]  # would become a self-loop
            continue
        retargeted_source = survivor_id if link.source_id == absorbed_id else link.source_id
        retargeted_target = survivor_id if link.target_id == absorbed_id else link.target_id
        existing = graph.find_link(retargeted_source, retargeted_target, link.label)
        if existing is not None and existing.id != link.id:
            del graph.links[link.id]  # duplicate of a survivor link
            continue
        link.source_id = retargeted_source
        link.target_id = retargeted_target
        link.revision += 1

    survivor.source_document_ids |= absorbed.source_document_ids
    survivor.revision += 1
    del graph.nodes[absorbed_id]
    graph.selections.selected_node_ids.discard(absorbed_id)


def create_link(graph, source_id, target_id, label="", link_id=None):
    _require_node(graph, source_id)
    _require_node(graph, target_id)
    if source_id == target_id:
        raise SelfLink(source_id)
    if graph.find_link(source_id, target_id, label) is not None:
        raise DuplicateLink(f"{source_id}-{target_id} {label!r}")
    if link_id is None:
        link_id = _next_id(graph.links, "l")
    graph.links[link_id] = LinkRecord(
        id=link_id, source_id=source_id, target_id=target_id,
        label=label, kind=LINK_USER,
    )
    return link_id


def update_link_label(graph, link_id, label):
    link = graph.links.get(link_id)
    if link is None:
        raise UnknownLink(link_id)
    existing = graph.find_link(link.source_id, link.target_id, label)
    if existing is not None and existing.id != link_id:
        raise DuplicateLink(f"{link.source_id}-{link.target_id} {label!r}")
    link.label = label
    link.revision += 1


def delete_link(graph, link_id):
    if link_id not in graph.links:
        raise UnknownLink(link_id)
    del graph.links[link_id]
