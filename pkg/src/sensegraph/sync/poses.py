"""Pose ingestion: latest-wins registers plus a decimated JSONL log.

Pose delivery is lossy by design; only the newest sample per
(device, kind) matters for live queries, and the persisted log is
downsampled to the configured rate.
"""

import json
import math
from dataclasses import dataclass

from ..errors import MalformedPose

QUAT_NORM_TOLERANCE = 1e-6


@dataclass
class PoseSample:
    device_id: str
    kind: str  # head | table
    t: int  # ms epoch
    position3: tuple
    orientation: tuple  # unit quaternion (x, y, z, w)

    def to_dict(self):
        return {"device": self.device_id, "kind": self.kind, "t": self.t,
                "position": list(self.position3),
                "orientation": list(self.orientation)}

    @classmethod
    def from_dict(cls, data):
        return cls(device_id=data["device"], kind=data["kind"],
                   t=int(data["t"]),
                   position3=tuple(float(c) for c in data["position"]),
                   orientation=tuple(float(c) for c in data["orientation"]))


def validate_quaternion(q):
    norm = math.sqrt(sum(c * c for c in q))
    if abs(norm - 1.0) > QUAT_NORM_TOLERANCE:
        raise MalformedPose(f"quaternion norm {norm:.6f}")


class PoseRegistry:
    """Latest pose per (device, kind) plus rate-limited log append."""

    def __init__(self, log_rate_hz=10.0, log_file=None):
        self.log_interval_ms = 1000.0 / log_rate_hz if log_rate_hz > 0 else 0.0
        self.latest = {}
        self.logged = []
        self._last_logged_t = {}
        self._log_file = log_file

    def ingest(self, sample):
        """Returns True if the sample was accepted (out-of-order samples
        are silently dropped; malformed quaternions raise)."""
        validate_quaternion(sample.orientation)
        key = (sample.device_id, sample.kind)
        previous = self.latest.get(key)
        if previous is not None and sample.t < previous.t:
            return False
        self.latest[key] = sample
        last_logged = self._last_logged_t.get(key)
        if last_logged is None or sample.t - last_logged >= self.log_interval_ms:
            self.logged.append(sample)
            self._last_logged_t[key] = sample.t
            if self._log_file is not None:
                self._log_file.write(
                    json.dumps(sample.to_dict(), separators=(",", ":")) + "\n")
        return True

    def flush(self):
        if self._log_file is not None:
            self._log_file.flush()


def read_pose_log(path):
    samples = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                samples.append(PoseSample.from_dict(json.loads(line)))
    return samples
