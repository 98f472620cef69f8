"""Trajectory length from pose logs: horizontal-plane displacement with a
jitter floor per step."""

import math

DEFAULT_JITTER_FLOOR_M = 0.005


def path_length(samples, jitter_floor=DEFAULT_JITTER_FLOOR_M):
    """Sum of (x, z) displacements between consecutive samples, steps
    below the jitter floor ignored. Invariant under time rescaling and
    vertical translation."""
    ordered = sorted(samples, key=lambda s: s.t)
    total = 0.0
    for prev, cur in zip(ordered, ordered[1:]):
        step = math.hypot(cur.position3[0] - prev.position3[0],
                          cur.position3[2] - prev.position3[2])
        if step >= jitter_floor:
            total += step
    return total
