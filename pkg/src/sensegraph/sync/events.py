"""Event-sourced session log: canonical op bodies, application, replay.

The log is the ground truth: one JSON SessionEvent per line, seq strictly
increasing and gap-free, and replaying events 1..n from the empty state
reproduces the state whose hash the server advertises at seq n.
"""

import json
from dataclasses import dataclass, field

from .. import graph as g
from ..errors import ProtocolError, ReplayError

OP_ADD_NODE = "addNode"
OP_UPDATE_NODE = "updateNode"
OP_MOVE_NODE = "moveNode"
OP_REMOVE_NODE = "removeNode"
OP_MERGE_NODES = "mergeNodes"
OP_ADD_LINK = "addLink"
OP_UPDATE_LINK = "updateLink"
OP_REMOVE_LINK = "removeLink"
OP_ADD_ANCHOR = "addDocumentAnchor"
OP_SET_SELECTION = "setSelection"

GRAPH_OPS = frozenset({
    OP_ADD_NODE, OP_UPDATE_NODE, OP_MOVE_NODE, OP_REMOVE_NODE,
    OP_MERGE_NODES, OP_ADD_LINK, OP_UPDATE_LINK, OP_REMOVE_LINK,
    OP_ADD_ANCHOR,
})


@dataclass
class SessionEvent:
    seq: int
    wall_clock: int  # ms epoch
    device_id: str
    device_kind: str  # pc | vr
    body: dict = field(default_factory=dict)

    def to_dict(self):
        return {"seq": self.seq, "wallClock": self.wall_clock,
                "device": self.device_id, "deviceKind": self.device_kind,
                "body": self.body}

    @classmethod
    def from_dict(cls, data):
        return cls(seq=int(data["seq"]), wall_clock=int(data["wallClock"]),
                   device_id=data["device"], device_kind=data["deviceKind"],
                   body=data["body"])


def apply_op_body(graph, body, device="", node_id=None, link_id=None):
    """Apply one canonical (or client-submitted) op body to `graph`.

    Returns the canonical body: the input plus any ids assigned during
    application, so it can be logged, broadcast, and replayed verbatim.
    Raises graph-core errors on invalid ops; the graph is untouched then
    (ops validate before mutating).
    """
    op = body.get("op")
    canonical = dict(body)
    if op == OP_ADD_NODE:
        nid, lid = g.create_node(
            graph, body["label"], body["position"], device=device,
            node_id=body.get("nodeId", node_id),
            link_id=body.get("linkId", link_id),
        )
        canonical["nodeId"] = nid
        canonical["linkId"] = lid
    elif op == OP_UPDATE_NODE:
        g.update_node_label(graph, body["nodeId"], body["label"])
    elif op == OP_MOVE_NODE:
        g.move_node(graph, body["nodeId"], body["position"])
    elif op == OP_REMOVE_NODE:
        g.delete_node(graph, body["nodeId"])
    elif op == OP_MERGE_NODES:
        g.merge_nodes(graph, body["survivorId"], body["absorbedId"])
    elif op == OP_ADD_LINK:
        lid = g.create_link(graph, body["sourceId"], body["targetId"],
                            body.get("label", ""),
                            link_id=body.get("linkId", link_id))
        canonical["linkId"] = lid
    elif op == OP_UPDATE_LINK:
        g.update_link_label(graph, body["linkId"], body["label"])
    elif op == OP_REMOVE_LINK:
        g.delete_link(graph, body["linkId"])
    elif op == OP_ADD_ANCHOR:
        canonical["nodeId"] = g.add_document_anchor(
            graph, body["documentId"], body.get("title", ""),
            body.get("position", (0.0, 0.0, 0.0)), device=device)
    elif op == OP_SET_SELECTION:
        apply_selection_body(graph, body, device)
    else:
        raise ProtocolError(f"unknown op {op!r}")
    return canonical


def apply_selection_body(graph, body, device=""):
    """Replace the session selection (last-write-wins), pruning ids that
    no longer exist so highlights never dangle."""
    wanted = set(body.get("selectedNodeIds", []))
    graph.selections = g.SelectionState(
        selected_document_id=body.get("selectedDocumentId"),
        selected_node_ids={n for n in wanted if n in graph.nodes},
        last_origin_device=device,
        seq=graph.selections.seq,
    )


def apply_event(graph, event):
    apply_op_body(graph, event.body, device=event.device_id)
    graph.seq = event.seq
    if event.body.get("op") == OP_SET_SELECTION:
        graph.selections.seq = event.seq


def write_event_line(fh, event):
    fh.write(json.dumps(event.to_dict(), separators=(",", ":")) + "\n")
    fh.flush()


def read_event_log(path):
    """Parse a JSONL event log; raises ReplayError naming the last good
    seq on a corrupt or truncated line, or on a sequence gap."""
    events = []
    last_good = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                event = SessionEvent.from_dict(data)
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ReplayError(
                    f"corrupt event at line {lineno} (last good seq {last_good}): {exc}",
                    last_good_seq=last_good) from exc
            if event.seq != last_good + 1:
                raise ReplayError(
                    f"sequence gap at line {lineno}: got {event.seq}, "
                    f"expected {last_good + 1}", last_good_seq=last_good)
            events.append(event)
            last_good = event.seq
    return events


def replay_events(events):
    """Deterministic reconstruction from the empty state."""
    graph = g.GraphState()
    for event in events:
        apply_event(graph, event)
    return graph


def replay_log(path):
    return replay_events(read_event_log(path))
