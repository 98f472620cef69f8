"""Scripted scenario driver: timed client actions against a live server,
then post-condition checks over the converged replicas.

Scenario file schema:
  {"clients": [{"device": id, "kind": "pc"|"vr", "actions": [...]}],
   "expect": [...]}

Action objects ("at" in ms orders actions within a client):
  {"at", "type": "op", "body": {...}}
  {"at", "type": "selection", "selectedNodeIds": [...], ...}
  {"at", "type": "pose", "kind", "t", "position", "orientation"}
  {"at", "type": "poseStream", "kind", "startT", "rateHz", "count",
   "position", "orientation"}
  {"at", "type": "frames", "frames": [hand-frame dicts]}

Expectations:
  {"type": "converged"}
  {"type": "nodeCount"|"linkCount"|"seqEquals"|"errorCount", "equals": n}
  {"type": "nodeWithLabel", "label": text}
  {"type": "gapFree"}
  {"type": "selectionEquals", "nodeIds": [...]}
"""

import asyncio
import json
from dataclasses import dataclass, field

from ..errors import ProtocolError
from ..sync.client import NetClient
from .frames import HandFrame
from .gestures import GestureMachine

ACTION_TYPES = frozenset({"op", "selection", "pose", "poseStream", "frames"})
EXPECT_TYPES = frozenset({"converged", "nodeCount", "linkCount", "seqEquals",
                          "errorCount", "nodeWithLabel", "gapFree",
                          "selectionEquals"})


@dataclass
class Scenario:
    clients: list
    expect: list

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - {"clients", "expect"}
        if unknown:
            raise ProtocolError(f"unknown scenario fields {sorted(unknown)}")
        clients = data.get("clients", [])
        for client in clients:
            unknown = set(client) - {"device", "kind", "actions"}
            if unknown:
                raise ProtocolError(f"unknown client fields {sorted(unknown)}")
            for action in client.get("actions", []):
                if action.get("type") not in ACTION_TYPES:
                    raise ProtocolError(f"unknown action type {action.get('type')!r}")
            times = [a.get("at", 0) for a in client.get("actions", [])]
            if times != sorted(times):
                raise ProtocolError(f"actions of {client.get('device')} not time-ordered")
        for expectation in data.get("expect", []):
            if expectation.get("type") not in EXPECT_TYPES:
                raise ProtocolError(f"unknown expect type {expectation.get('type')!r}")
        return cls(clients=clients, expect=data.get("expect", []))

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class ScenarioResult:
    transcript: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(check["ok"] for check in self.checks)


async def _wait_own_acked(client, device, submitted, timeout=5.0):
    """Block until every op this client submitted was applied or rejected,
    so hand frames are judged against an up-to-date replica graph."""
    deadline = asyncio.get_event_loop().time() + timeout
    while True:
        acked = sum(1 for m in client.replica.applied if m["device"] == device)
        acked += len(client.replica.errors)
        if acked >= submitted:
            return
        if asyncio.get_event_loop().time() >= deadline:
            raise TimeoutError(f"{device}: {acked}/{submitted} ops acknowledged")
        await asyncio.sleep(0.005)


async def _run_client(spec, host, port, session_id, transcript, realtime):
    client = NetClient(host, port, session_id, spec["device"],
                       spec.get("kind", "pc"))
    await client.connect()
    machine = GestureMachine()
    submitted = 0
    start = asyncio.get_event_loop().time()
    for action in spec.get("actions", []):
        if realtime:
            target = start + action.get("at", 0) / 1000.0
            delay = target - asyncio.get_event_loop().time()
            if delay > 0:
                await asyncio.sleep(delay)
        kind = action["type"]
        if kind == "op":
            await client.submit_op(action["body"])
            submitted += 1
            transcript.append({"device": spec["device"], "sent": action["body"]})
        elif kind == "selection":
            body = {k: v for k, v in action.items() if k not in ("at", "type")}
            await client.set_selection(body)
            transcript.append({"device": spec["device"], "sentSelection": body})
        elif kind == "pose":
            await client.send_pose(action["kind"], action["t"],
                                   action["position"], action["orientation"])
        elif kind == "poseStream":
            interval = 1000.0 / action.get("rateHz", 90)
            t = action.get("startT", 0)
            for i in range(action["count"]):
                await client.send_pose(action["kind"], int(t + i * interval),
                                       action["position"],
                                       action.get("orientation", [0, 0, 0, 1]))
        elif kind == "frames":
            await _wait_own_acked(client, spec["device"], submitted)
            for frame_dict in action["frames"]:
                frame = HandFrame.from_dict(frame_dict)
                for op in machine.step(frame, client.replica.graph):
                    if op.get("local"):
                        continue
                    await client.submit_op(op)
                    submitted += 1
                    transcript.append({"device": spec["device"], "sent": op})
                await _wait_own_acked(client, spec["device"], submitted)
    return client


async def _settle(clients, timeout=10.0):
    """Wait until every replica has caught up to the highest seq seen."""
    deadline = asyncio.get_event_loop().time() + timeout
    while True:
        top = max(c.replica.graph.seq for c in clients)
        try:
            for client in clients:
                remaining = deadline - asyncio.get_event_loop().time()
                if remaining <= 0:
                    raise TimeoutError("scenario did not settle")
                await client.wait_for_seq(top, timeout=remaining)
        except TimeoutError:
            raise
        if all(c.replica.graph.seq == top for c in clients):
            await asyncio.sleep(0.05)
            if all(c.replica.graph.seq == top for c in clients):
                return


def _evaluate(expectation, clients, session):
    kind = expectation["type"]
    replicas = [c.replica for c in clients]
    graph = replicas[0].graph if replicas else None
    if kind == "converged":
        hashes = {r.hash() for r in replicas}
        server_hash = session.snapshot_hash() if session else None
        ok = len(hashes) == 1 and (server_hash is None or hashes == {server_hash})
        return ok, f"replica hashes {sorted(hashes)} server {server_hash}"
    if kind == "nodeCount":
        count = len(graph.nodes)
        return count == expectation["equals"], f"nodeCount {count}"
    if kind == "linkCount":
        count = len(graph.links)
        return count == expectation["equals"], f"linkCount {count}"
    if kind == "seqEquals":
        return graph.seq == expectation["equals"], f"seq {graph.seq}"
    if kind == "errorCount":
        count = sum(len(r.errors) for r in replicas)
        return count == expectation["equals"], f"errors {count}"
    if kind == "nodeWithLabel":
        labels = {n.label for n in graph.nodes.values()}
        return expectation["label"] in labels, f"labels {sorted(labels)}"
    if kind == "gapFree":
        seqs = [m["seq"] for r in replicas for m in r.applied]
        per_replica_ok = all(
            [m["seq"] for m in r.applied]
            == list(range(r.applied[0]["seq"], r.applied[0]["seq"] + len(r.applied)))
            for r in replicas if r.applied)
        return per_replica_ok, f"applied seqs {sorted(set(seqs))[:5]}.."
    if kind == "selectionEquals":
        got = sorted(graph.selections.selected_node_ids)
        return got == sorted(expectation["nodeIds"]), f"selection {got}"
    return False, f"unknown expectation {kind}"


async def run_scenario_async(scenario, host, port, session_id="default",
                             session=None, realtime=False):
    transcript = []
    clients = await asyncio.gather(*[
        _run_client(spec, host, port, session_id, transcript, realtime)
        for spec in scenario.clients])
    try:
        await _settle(clients)
        result = ScenarioResult(transcript=transcript)
        for expectation in scenario.expect:
            ok, detail = _evaluate(expectation, clients, session)
            result.checks.append({"expect": expectation, "ok": ok,
                                  "detail": detail})
        return result
    finally:
        for client in clients:
            await client.close()


def run_scenario(scenario, host, port, session_id="default", session=None,
                 realtime=False):
    return asyncio.run(run_scenario_async(scenario, host, port, session_id,
                                          session=session, realtime=realtime))
