"""Synthetic hand-tracking frames: the input stream of the headless VR
client stand-in."""

from dataclasses import dataclass, field

import numpy as np

POSTURE_FLAT = "flat"
POSTURE_FIST = "fist"
POSTURE_PINCH = "pinch"
POSTURES = (POSTURE_FLAT, POSTURE_FIST, POSTURE_PINCH)


@dataclass
class Hand:
    palm_position: np.ndarray
    posture: str = POSTURE_FLAT
    palm_orientation: tuple = (0.0, 0.0, 0.0, 1.0)
    fingertip: np.ndarray = None
    ray_origin: np.ndarray = None
    ray_direction: np.ndarray = None

    def __post_init__(self):
        self.palm_position = np.asarray(self.palm_position, dtype=float)
        if self.posture not in POSTURES:
            raise ValueError(f"bad posture {self.posture!r}")
        if self.fingertip is None:
            self.fingertip = self.palm_position.copy()
        else:
            self.fingertip = np.asarray(self.fingertip, dtype=float)


@dataclass
class HandFrame:
    t: int  # ms, strictly increasing in a stream
    left: Hand = None
    right: Hand = None

    def __post_init__(self):
        if self.left is None:
            self.left = Hand(np.zeros(3))
        if self.right is None:
            self.right = Hand(np.zeros(3))

    @classmethod
    def from_dict(cls, data):
        def hand(h):
            if h is None:
                return None
            return Hand(
                palm_position=h["palm"], posture=h.get("posture", POSTURE_FLAT),
                palm_orientation=tuple(h.get("orientation", (0, 0, 0, 1))),
                fingertip=h.get("fingertip"))
        return cls(t=int(data["t"]), left=hand(data.get("left")),
                   right=hand(data.get("right")))
