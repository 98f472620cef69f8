import io
import json
import random

import pytest

from sensegraph import graph as g
from sensegraph.errors import DuplicateDevice, MalformedPose, SenseGraphError, UnknownNode
from sensegraph.sync import (
    InProcessClient, Session, SessionEvent, read_event_log, replay_events,
    replay_log,
)


@pytest.fixture
def session():
    return Session(session_id="s1", clock=lambda: 1000)


def _add_node(session, device, label, pos=(0, 0, 0)):
    return session.submit_op(device, {"op": "addNode", "label": label,
                                      "position": list(pos)})


def test_join_empty_session(session):
    welcome = session.join("pc1", "pc")
    assert welcome["type"] == "Welcome"
    assert welcome["payload"]["seq"] == 0
    assert welcome["payload"]["snapshot"]["nodes"] == []


def test_duplicate_device(session):
    session.join("pc1", "pc")
    with pytest.raises(DuplicateDevice):
        session.join("pc1", "pc")
    session.leave("pc1")
    session.join("pc1", "pc")  # rejoin after leave is fine


def test_join_after_ops_snapshot_matches_replay(session):
    session.join("pc1", "pc")
    for i in range(5):
        _add_node(session, "pc1", f"node{i}")
    welcome = session.join("vr1", "vr")
    replayed = replay_events(session.events)
    assert welcome["payload"]["hash"] == g.snapshot_hash(replayed)


def test_ops_get_gapfree_seqs(session):
    session.join("pc1", "pc")
    messages = [_add_node(session, "pc1", f"node{i}") for i in range(100)]
    assert [m["seq"] for m in messages] == list(range(1, 101))


def test_failed_op_consumes_no_seq(session):
    session.join("pc1", "pc")
    _add_node(session, "pc1", "a")
    with pytest.raises(UnknownNode):
        session.submit_op("pc1", {"op": "removeNode", "nodeId": "ghost"})
    assert session.graph.seq == 1
    assert len(session.events) == 1


def test_apply_order_is_arrival_order_last_write_wins(session):
    session.join("pc1", "pc")
    session.join("vr1", "vr")
    node = _add_node(session, "pc1", "x")["payload"]["body"]["nodeId"]
    session.submit_op("pc1", {"op": "updateNode", "nodeId": node, "label": "from-pc"})
    session.submit_op("vr1", {"op": "updateNode", "nodeId": node, "label": "from-vr"})
    assert session.graph.nodes[node].label == "from-vr"


def test_selection_broadcast_and_prune(session):
    session.join("pc1", "pc")
    session.join("vr1", "vr")
    node = _add_node(session, "vr1", "n")["payload"]["body"]["nodeId"]
    applied = session.set_selection("vr1", {"selectedNodeIds": [node]})
    assert applied["type"] == "SelectionApplied"
    assert session.graph.selections.selected_node_ids == {node}
    assert session.graph.selections.last_origin_device == "vr1"
    session.submit_op("pc1", {"op": "removeNode", "nodeId": node})
    assert session.graph.selections.selected_node_ids == set()


def test_selection_of_missing_node_pruned_on_apply(session):
    session.join("pc1", "pc")
    session.set_selection("pc1", {"selectedNodeIds": ["ghost"]})
    assert session.graph.selections.selected_node_ids == set()


def test_event_log_written_before_broadcast():
    log_file = io.StringIO()
    session = Session(session_id="s1", event_log_file=log_file,
                      clock=lambda: 42)
    seen = []
    session.subscribe(lambda m: seen.append(len(log_file.getvalue().splitlines())))
    session.join("pc1", "pc")
    _add_node(session, "pc1", "a")
    assert seen == [1]  # one log line existed when the broadcast fired


def test_replica_convergence_simple(session):
    pc = InProcessClient(session, "pc1", "pc")
    vr = InProcessClient(session, "vr1", "vr")
    pc.join()
    vr.join()
    pc.submit_op({"op": "addNode", "label": "iguana", "position": [0, 0, 0]})
    vr.submit_op({"op": "addNode", "label": "2007-02-20", "position": [1, 0, 0]})
    pc.deliver()
    vr.deliver()
    assert pc.hash() == vr.hash() == session.snapshot_hash()


def test_resync_suffix_and_errors(session):
    session.join("pc1", "pc")
    for i in range(5):
        _add_node(session, "pc1", f"n{i}")
    suffix = session.resync("pc1", 2)
    assert [m["seq"] for m in suffix] == [3, 4, 5]
    assert session.resync("pc1", 5) == []
    with pytest.raises(SenseGraphError):
        session.resync("pc1", 6)


def test_resync_full_snapshot_when_history_dropped(session):
    session.join("pc1", "pc")
    for i in range(5):
        _add_node(session, "pc1", f"n{i}")
    replies = session.resync("pc1", 1, retention_from=4)
    assert len(replies) == 1 and replies[0]["type"] == "Snapshot"
    restored = g.graph_from_snapshot(replies[0]["payload"]["snapshot"])
    restored.seq = replies[0]["payload"]["seq"]
    assert g.snapshot_hash(restored) == session.snapshot_hash()


# -- pose path -------------------------------------------------------------

def _pose(t, x=0.0):
    return {"kind": "head", "t": t, "position": [x, 1.6, 0],
            "orientation": [0, 0, 0, 1]}


def test_pose_decimation(session):
    session.join("vr1", "vr")
    for i in range(90):  # one second at 90 Hz
        session.ingest_pose("vr1", _pose(i * 1000 // 90))
    assert len(session.poses.logged) <= 10


def test_pose_out_of_order_dropped(session):
    session.join("vr1", "vr")
    assert session.ingest_pose("vr1", _pose(1000)) is True
    assert session.ingest_pose("vr1", _pose(500)) is False
    assert session.poses.latest[("vr1", "head")].t == 1000


def test_malformed_pose(session):
    with pytest.raises(MalformedPose):
        session.ingest_pose("vr1", {"kind": "head", "t": 0,
                                    "position": [0, 0, 0],
                                    "orientation": [0, 0, 0, 0.5]})


# -- replay ------------------------------------------------------------------

def test_replay_deterministic(tmp_path, session):
    log_path = tmp_path / "events.jsonl"
    with open(log_path, "w") as fh:
        session._event_log_file = fh
        session.join("pc1", "pc")
        node = _add_node(session, "pc1", "a")["payload"]["body"]["nodeId"]
        _add_node(session, "pc1", "2007-02-20")
        session.submit_op("pc1", {"op": "moveNode", "nodeId": node,
                                  "position": [1, 2, 3]})
        session.set_selection("pc1", {"selectedNodeIds": [node]})
    first = g.dumps_snapshot(replay_log(log_path))
    second = g.dumps_snapshot(replay_log(log_path))
    assert first == second
    assert g.snapshot_hash(replay_log(log_path)) == session.snapshot_hash()


def test_replay_truncated_line(tmp_path):
    log_path = tmp_path / "events.jsonl"
    event = SessionEvent(1, 0, "pc1", "pc",
                         {"op": "addNode", "label": "a", "position": [0, 0, 0],
                          "nodeId": "n1", "linkId": None})
    with open(log_path, "w") as fh:
        fh.write(json.dumps(event.to_dict()) + "\n")
        fh.write('{"seq": 2, "wallClock"')  # truncated write
    with pytest.raises(SenseGraphError) as excinfo:
        read_event_log(log_path)
    assert excinfo.value.last_good_seq == 1


def test_replay_empty_log(tmp_path):
    log_path = tmp_path / "empty.jsonl"
    log_path.write_text("")
    graph = replay_log(log_path)
    assert graph.nodes == {} and graph.seq == 0


def test_randomized_multi_client_convergence():
    rng = random.Random(20240817)
    for run in range(10):
        session = Session(session_id=f"run{run}")
        clients = [InProcessClient(session, f"dev{i}", "pc" if i % 2 else "vr")
                   for i in range(3)]
        for client in clients:
            client.join()
        for step in range(60):
            client = rng.choice(clients)
            label = rng.choice(["a", "b", "2007-02-20", "x"])
            client.submit_op({"op": "addNode", "label": label,
                              "position": [rng.random(), 0, 0]})
            if rng.random() < 0.4:
                rng.choice(clients).deliver(limit=rng.randint(1, 5))
        for client in clients:
            client.deliver()
        hashes = {c.hash() for c in clients}
        assert hashes == {session.snapshot_hash()}
