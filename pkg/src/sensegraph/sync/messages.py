"""Wire envelope and newline-delimited JSON framing.

Every message is one UTF-8 JSON object per line with exactly the fields
{"type","session","device","seq","payload"}; `seq` is null except on
server->client apply messages.
"""

import json

from ..errors import ProtocolError

TYPES = frozenset({
    "Hello", "Welcome", "Op", "OpApplied", "Selection", "SelectionApplied",
    "Pose", "ResyncRequest", "Snapshot", "Ping", "Pong", "Error",
})

ENVELOPE_FIELDS = ("type", "session", "device", "seq", "payload")


def make_message(type_, session, device, payload, seq=None):
    if type_ not in TYPES:
        raise ProtocolError(f"unknown message type {type_!r}")
    return {"type": type_, "session": session, "device": device,
            "seq": seq, "payload": payload}


def encode_message(message):
    return (json.dumps(message, separators=(",", ":")) + "\n").encode("utf-8")


def decode_line(line):
    if isinstance(line, bytes):
        line = line.decode("utf-8")
    try:
        message = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"bad JSON frame: {exc}") from exc
    if not isinstance(message, dict):
        raise ProtocolError("frame is not an object")
    missing = [f for f in ENVELOPE_FIELDS if f not in message]
    if missing:
        raise ProtocolError(f"frame missing fields {missing}")
    if message["type"] not in TYPES:
        raise ProtocolError(f"unknown message type {message['type']!r}")
    return message


def iter_frames(buffer):
    """Split a byte buffer into complete frames; returns (frames, rest)."""
    frames = []
    while b"\n" in buffer:
        line, buffer = buffer.split(b"\n", 1)
        if line.strip():
            frames.append(line)
    return frames, buffer
