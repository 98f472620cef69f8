"""Server-authoritative session core.

All mutations for a session pass through this single serialization point:
ops apply atomically in arrival order, the event is appended to the log
before the apply message is broadcast, and failed ops consume no sequence
number. Transport is someone else's job (see server.py); tests drive this
class directly.
"""

import time
from dataclasses import dataclass

from .. import graph as g
from ..errors import DuplicateDevice, SenseGraphError
from .events import (
    OP_ADD_ANCHOR, OP_ADD_LINK, OP_ADD_NODE, OP_SET_SELECTION,
    SessionEvent, apply_op_body, write_event_line,
)
from .messages import make_message
from .poses import PoseRegistry, PoseSample


@dataclass
class DevicePresence:
    device_id: str
    device_kind: str
    connected_since: int
    last_seen: int


class Session:
    def __init__(self, session_id="default", corpus_manifest=None,
                 pose_log_hz=10.0, event_log_file=None, pose_log_file=None,
                 clock=None):
        self.session_id = session_id
        self.corpus_manifest = corpus_manifest
        self.graph = g.GraphState()
        self.events = []
        self.presences = {}
        self.poses = PoseRegistry(log_rate_hz=pose_log_hz, log_file=pose_log_file)
        self._event_log_file = event_log_file
        self._clock = clock or (lambda: int(time.time() * 1000))
        self._subscribers = []
        self._node_counter = 0
        self._link_counter = 0

    # -- connection lifecycle -------------------------------------------

    def subscribe(self, callback):
        """Register a broadcast sink; called with every apply message in
        apply order."""
        self._subscribers.append(callback)
        return lambda: self._subscribers.remove(callback)

    def join(self, device_id, device_kind):
        if device_id in self.presences:
            raise DuplicateDevice(device_id)
        now = self._clock()
        self.presences[device_id] = DevicePresence(device_id, device_kind, now, now)
        payload = {
            "snapshot": g.snapshot_dict(self.graph),
            "corpus": self.corpus_manifest,
            "seq": self.graph.seq,
            "hash": g.snapshot_hash(self.graph),
        }
        return make_message("Welcome", self.session_id, device_id, payload)

    def leave(self, device_id):
        self.presences.pop(device_id, None)

    def _device_kind(self, device_id):
        presence = self.presences.get(device_id)
        return presence.device_kind if presence else "pc"

    # -- ordered applies -------------------------------------------------

    def _broadcast(self, message):
        for callback in list(self._subscribers):
            callback(message)

    def _append_event(self, device_id, body):
        seq = self.graph.seq  # already advanced by caller
        event = SessionEvent(seq=seq, wall_clock=self._clock(),
                             device_id=device_id,
                             device_kind=self._device_kind(device_id),
                             body=body)
        self.events.append(event)
        if self._event_log_file is not None:
            write_event_line(self._event_log_file, event)
        return event

    def submit_op(self, device_id, body):
        """Apply a graph op; returns the OpApplied broadcast message.
        Raises the graph-core error on rejection (no seq consumed)."""
        ids = {}
        if body.get("op") == OP_ADD_NODE and "nodeId" not in body:
            ids["node_id"] = self._alloc_node_id()
            if self.graph.selections.selected_document_id:
                ids["link_id"] = self._alloc_link_id()
        elif body.get("op") == OP_ADD_LINK and "linkId" not in body:
            ids["link_id"] = self._alloc_link_id()
        canonical = apply_op_body(self.graph, body, device=device_id, **ids)
        self.graph.seq += 1
        if body.get("op") == OP_SET_SELECTION:
            self.graph.selections.seq = self.graph.seq
        event = self._append_event(device_id, canonical)
        message = make_message(
            "SelectionApplied" if canonical["op"] == OP_SET_SELECTION else "OpApplied",
            self.session_id, device_id,
            {"body": canonical, "wallClock": event.wall_clock,
             "deviceKind": event.device_kind,
             "hash": g.snapshot_hash(self.graph)},
            seq=self.graph.seq)
        self._broadcast(message)
        return message

    def set_selection(self, device_id, selection_body):
        body = dict(selection_body)
        body["op"] = OP_SET_SELECTION
        return self.submit_op(device_id, body)

    def seed_anchor(self, document_id, title="", position3=(0.0, 0.0, 0.0)):
        return self.submit_op("server", {
            "op": OP_ADD_ANCHOR, "documentId": document_id,
            "title": title, "position": list(position3)})

    def _alloc_node_id(self):
        self._node_counter += 1
        return f"n{self._node_counter}"

    def _alloc_link_id(self):
        self._link_counter += 1
        return f"l{self._link_counter}"

    # -- pose path (lossy, no sequencing) ---------------------------------

    def ingest_pose(self, device_id, payload):
        sample = PoseSample(
            device_id=device_id, kind=payload["kind"], t=int(payload["t"]),
            position3=tuple(float(c) for c in payload["position"]),
            orientation=tuple(float(c) for c in payload["orientation"]))
        return self.poses.ingest(sample)

    # -- resync ------------------------------------------------------------

    def resync(self, device_id, from_seq, retention_from=1):
        """Gap-free event suffix if retained, else a full snapshot."""
        if from_seq > self.graph.seq:
            raise SenseGraphError(f"fromSeq {from_seq} ahead of server {self.graph.seq}")
        if from_seq + 1 >= retention_from:
            replies = []
            for event in self.events:
                if event.seq <= from_seq:
                    continue
                replies.append(make_message(
                    "SelectionApplied" if event.body.get("op") == OP_SET_SELECTION
                    else "OpApplied",
                    self.session_id, event.device_id,
                    {"body": event.body, "wallClock": event.wall_clock,
                     "deviceKind": event.device_kind, "hash": None},
                    seq=event.seq))
            return replies
        payload = {"snapshot": g.snapshot_dict(self.graph),
                   "seq": self.graph.seq,
                   "hash": g.snapshot_hash(self.graph)}
        return [make_message("Snapshot", self.session_id, device_id, payload,
                             seq=self.graph.seq)]

    def snapshot_hash(self):
        return g.snapshot_hash(self.graph)

    def flush(self):
        if self._event_log_file is not None:
            self._event_log_file.flush()
        self.poses.flush()
