"""Client replicas: an in-process variant for fast randomized tests and an
asyncio TCP variant for end-to-end scenarios.

Both keep a GraphState mirror, apply server broadcasts in seq order, and
surface the replica hash for convergence checks.
"""

import asyncio
from collections import deque

from .. import graph as g
from ..errors import ProtocolError, SenseGraphError
from .events import OP_SET_SELECTION, apply_op_body
from .messages import decode_line, encode_message, make_message


class ReplicaState:
    """Shared apply logic for both transports."""

    def __init__(self):
        self.graph = g.GraphState()
        self.errors = []
        self.applied = []

    def load_snapshot(self, snapshot, seq):
        self.graph = g.graph_from_snapshot(snapshot)
        self.graph.seq = seq

    def apply_message(self, message):
        kind = message["type"]
        if kind in ("OpApplied", "SelectionApplied"):
            seq = message["seq"]
            if seq <= self.graph.seq:
                return  # duplicate delivery after a resync overlap
            if seq != self.graph.seq + 1:
                raise ProtocolError(f"gap: replica at {self.graph.seq}, got {seq}")
            body = message["payload"]["body"]
            apply_op_body(self.graph, body, device=message["device"])
            self.graph.seq = seq
            if body.get("op") == OP_SET_SELECTION:
                self.graph.selections.seq = seq
            self.applied.append(message)
            expected = message["payload"].get("hash")
            if expected is not None and expected != self.hash():
                raise ProtocolError(f"replica hash mismatch at seq {seq}")
        elif kind == "Snapshot":
            self.load_snapshot(message["payload"]["snapshot"],
                               message["payload"]["seq"])
        elif kind == "Error":
            self.errors.append(message["payload"])

    def hash(self):
        return g.snapshot_hash(self.graph)


class InProcessClient:
    """Replica wired straight into a Session; broadcast delivery is queued
    so tests can interleave and delay it."""

    def __init__(self, session, device_id, device_kind="pc"):
        self.session = session
        self.device_id = device_id
        self.device_kind = device_kind
        self.replica = ReplicaState()
        self.inbox = deque()
        self._unsubscribe = None

    def join(self):
        welcome = self.session.join(self.device_id, self.device_kind)
        self._unsubscribe = self.session.subscribe(self.inbox.append)
        self.replica.load_snapshot(welcome["payload"]["snapshot"],
                                   welcome["payload"]["seq"])
        return welcome

    def leave(self):
        if self._unsubscribe is not None:
            self._unsubscribe()
            self._unsubscribe = None
        self.session.leave(self.device_id)

    def submit_op(self, body):
        try:
            return self.session.submit_op(self.device_id, body)
        except SenseGraphError as exc:
            self.replica.errors.append({"code": exc.code, "message": str(exc)})
            return None

    def set_selection(self, selection_body):
        return self.session.set_selection(self.device_id, selection_body)

    def deliver(self, limit=None):
        """Apply queued broadcasts to the replica, oldest first."""
        count = 0
        while self.inbox and (limit is None or count < limit):
            self.replica.apply_message(self.inbox.popleft())
            count += 1
        return count

    def hash(self):
        return self.replica.hash()


class NetClient:
    """Asyncio newline-JSON client speaking the session protocol."""

    def __init__(self, host, port, session_id, device_id, device_kind="pc"):
        self.host = host
        self.port = port
        self.session_id = session_id
        self.device_id = device_id
        self.device_kind = device_kind
        self.replica = ReplicaState()
        self._reader = None
        self._writer = None
        self._reader_task = None
        self._apply_waiters = []
        self.last_welcome = None

    async def connect(self):
        self._reader, self._writer = await asyncio.open_connection(self.host, self.port)
        await self._send("Hello", {"deviceKind": self.device_kind})
        welcome = decode_line(await self._reader.readline())
        if welcome["type"] == "Error":
            raise SenseGraphError(welcome["payload"].get("message", "join failed"))
        self.last_welcome = welcome
        self.replica.load_snapshot(welcome["payload"]["snapshot"],
                                   welcome["payload"]["seq"])
        self._reader_task = asyncio.ensure_future(self._read_loop())
        return welcome

    async def close(self):
        if self._reader_task is not None:
            self._reader_task.cancel()
            try:
                await self._reader_task
            except (asyncio.CancelledError, Exception):
                pass
        if self._writer is not None:
            self._writer.close()

    async def _send(self, type_, payload):
        self._writer.write(encode_message(
            make_message(type_, self.session_id, self.device_id, payload)))
        await self._writer.drain()

    async def _read_loop(self):
        while True:
            line = await self._reader.readline()
            if not line:
                break
            self.replica.apply_message(decode_line(line))
            for waiter in self._apply_waiters:
                if not waiter.done():
                    waiter.set_result(None)
            self._apply_waiters = [w for w in self._apply_waiters if not w.done()]

    async def submit_op(self, body):
        await self._send("Op", {"body": body})

    async def set_selection(self, selection_body):
        await self._send("Selection", selection_body)

    async def send_pose(self, kind, t, position, orientation):
        await self._send("Pose", {"kind": kind, "t": t,
                                  "position": list(position),
                                  "orientation": list(orientation)})

    async def resync(self, from_seq=None):
        await self._send("ResyncRequest",
                         {"fromSeq": self.replica.graph.seq if from_seq is None
                          else from_seq})

    async def wait_for_seq(self, seq, timeout=5.0):
        deadline = asyncio.get_event_loop().time() + timeout
        while self.replica.graph.seq < seq:
            remaining = deadline - asyncio.get_event_loop().time()
            if remaining <= 0:
                raise TimeoutError(
                    f"replica stuck at seq {self.replica.graph.seq}, wanted {seq}")
            waiter = asyncio.get_event_loop().create_future()
            self._apply_waiters.append(waiter)
            try:
                await asyncio.wait_for(waiter, remaining)
            except asyncio.TimeoutError:
                pass

    def hash(self):
        return self.replica.hash()
