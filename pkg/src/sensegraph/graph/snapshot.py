"""Canonical snapshot serialization and content hashing.

The snapshot file is canonical JSON: keys sorted lexicographically, nodes
and links as arrays sorted by id, timestamps as ISO 8601 UTC strings,
positions as 3-element arrays of meters.

The content hash is computed over the same structure with every float
replaced by its big-endian IEEE-754 bit pattern ("f" + 16 hex digits), so
replicas written in other languages can reproduce the digest without
agreeing on a decimal float formatter.
"""

import hashlib
import json
import struct
from datetime import datetime, timezone

from .model import GraphState, LinkRecord, NodeRecord, SelectionState


def _iso(dt):
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_iso(text):
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)


def _float_key(x):
    return "f" + struct.pack(">d", float(x)).hex()


def _node_dict(node, position):
    return {
        "createdByDevice": node.created_by_device,
        "id": node.id,
        "kind": node.kind,
        "label": node.label,
        "parsedTime": _iso(node.parsed_time) if node.parsed_time else None,
        "position3": position(node.position3),
        "revision": node.revision,
        "sourceDocumentIds": sorted(node.source_document_ids),
    }


def _link_dict(link):
    return {
        "id": link.id,
        "kind": link.kind,
        "label": link.label,
        "revision": link.revision,
        "sourceId": link.source_id,
        "targetId": link.target_id,
    }


def _selection_dict(sel):
    return {
        "lastOriginDevice": sel.last_origin_device,
        "selectedDocumentId": sel.selected_document_id,
        "selectedNodeIds": sorted(sel.selected_node_ids),
        "seq": sel.seq,
    }


def _state_dict(graph, position):
    return {
        "links": [_link_dict(graph.links[k]) for k in sorted(graph.links)],
        "nodes": [_node_dict(graph.nodes[k], position) for k in sorted(graph.nodes)],
        "selections": _selection_dict(graph.selections),
        "seq": graph.seq,
    }


def snapshot_dict(graph):
    return _state_dict(graph, position=lambda p: [float(c) for c in p])


def dumps_snapshot(graph):
    """Deterministic canonical JSON bytes for the snapshot file."""
    return json.dumps(snapshot_dict(graph), sort_keys=True,
                      separators=(",", ":")).encode("utf-8")


def snapshot_hash(graph):
    """Stable sha256 digest of (nodes, links, selections, seq)."""
    canonical = _state_dict(graph, position=lambda p: [_float_key(c) for c in p])
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def graph_from_snapshot(data):
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    graph = GraphState(seq=int(data.get("seq", 0)))
    for nd in data.get("nodes", []):
        graph.nodes[nd["id"]] = NodeRecord(
            id=nd["id"], label=nd["label"], kind=nd["kind"],
            position3=tuple(float(c) for c in nd["position3"]),
            parsed_time=_parse_iso(nd["parsedTime"]) if nd.get("parsedTime") else None,
            source_document_ids=set(nd.get("sourceDocumentIds", [])),
            created_by_device=nd.get("createdByDevice", ""),
            revision=int(nd.get("revision", 0)),
        )
    for ld in data.get("links", []):
        graph.links[ld["id"]] = LinkRecord(
            id=ld["id"], source_id=ld["sourceId"], target_id=ld["targetId"],
            label=ld.get("label", ""), kind=ld.get("kind", "user"),
            revision=int(ld.get("revision", 0)),
        )
    sel = data.get("selections", {})
    graph.selections = SelectionState(
        selected_document_id=sel.get("selectedDocumentId"),
        selected_node_ids=set(sel.get("selectedNodeIds", [])),
        last_origin_device=sel.get("lastOriginDevice", ""),
        seq=int(sel.get("seq", 0)),
    )
    return graph
