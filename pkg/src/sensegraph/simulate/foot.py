"""Floor timeline interaction: standing on a marker selects its node, or
every node of a date group; a dwell time guards against walk-throughs."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class FloorMarker:
    kind: str  # entry | group
    key: str  # node id for entries, ISO date for groups
    node_ids: list
    position2: tuple  # (x, z) on the floor


def place_timeline_on_floor(timeline, origin=(0.0, 0.0), length_m=4.0,
                            member_spacing_m=0.4):
    """Lay the derived timeline along the floor x axis: one white group
    marker per date on the axis, member entries fanned out in +z."""
    markers = []
    ox, oz = origin
    for group in timeline.date_groups:
        x = ox + group.marker_position * length_m
        markers.append(FloorMarker(
            kind="group", key=group.calendar_date.isoformat(),
            node_ids=list(group.member_node_ids), position2=(x, oz)))
        for i, node_id in enumerate(group.member_node_ids):
            markers.append(FloorMarker(
                kind="entry", key=node_id, node_ids=[node_id],
                position2=(x, oz + (i + 1) * member_spacing_m)))
    return markers


class FootTracker:
    """Feed head poses in time order; fires one selection op per dwell."""

    def __init__(self, markers, stand_radius=0.25, dwell_ms=500):
        self.markers = markers
        self.stand_radius = stand_radius
        self.dwell_ms = dwell_ms
        self._candidate = None
        self._since = None
        self._fired = False

    def _marker_under(self, head_position):
        foot = (float(head_position[0]), float(head_position[2]))
        best = None
        best_dist = self.stand_radius
        for marker in self.markers:
            dist = float(np.hypot(foot[0] - marker.position2[0],
                                  foot[1] - marker.position2[1]))
            if dist <= best_dist:
                best, best_dist = marker, dist
        return best

    def step(self, head_position, t_ms):
        marker = self._marker_under(head_position)
        if marker is None or (self._candidate is not None
                              and marker.key != self._candidate.key):
            self._candidate = marker
            self._since = t_ms if marker is not None else None
            self._fired = False
            return None
        if self._candidate is None:
            self._candidate = marker
            self._since = t_ms
            self._fired = False
            return None
        if not self._fired and t_ms - self._since >= self.dwell_ms:
            self._fired = True
            return {"op": "setSelection",
                    "selectedNodeIds": sorted(marker.node_ids)}
        return None
