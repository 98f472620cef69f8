"""Gesture state machine: posture transitions in a hand-frame stream
become graph operations.

  flat->fist near a node        grab it; the node follows the palm
  fist->flat, fast              throw: delete the node
  fist->flat over another node  drag: create a link
  both hands release close      merge the two grabbed nodes
  pinch link + pull             delete the link
  both fists in empty space     two-hand zoom (local view scale only)

Deterministic: identical frame streams yield identical op streams. Every
threshold lives in GestureConfig.
"""

from dataclasses import dataclass, field

import numpy as np

from .frames import POSTURE_FIST, POSTURE_FLAT, POSTURE_PINCH

VELOCITY_WINDOW = 3  # frames in the smoothed finite difference
VELOCITY_ALPHA = 0.5


@dataclass
class GestureConfig:
    grab_radius: float = 0.10  # m
    merge_radius: float = 0.08
    link_radius: float = 0.08
    throw_speed: float = 1.5  # m/s
    pull_distance: float = 0.15
    stand_radius: float = 0.25
    dwell_ms: int = 500
    touch_depth: float = 0.015


@dataclass
class HandState:
    mode: str = "idle"  # idle | grabbing | pulling
    node_id: str = None
    grab_offset: np.ndarray = None
    link_id: str = None
    pull_anchor: np.ndarray = None
    recent_velocities: list = field(default_factory=list)

    def smoothed_velocity(self):
        if not self.recent_velocities:
            return np.zeros(3)
        total = np.zeros(3)
        weight_sum = 0.0
        weight = 1.0
        for v in reversed(self.recent_velocities[-VELOCITY_WINDOW:]):
            total += weight * v
            weight_sum += weight
            weight *= 1.0 - VELOCITY_ALPHA
        return total / weight_sum


@dataclass
class GestureState:
    left: HandState = field(default_factory=HandState)
    right: HandState = field(default_factory=HandState)
    zoom_start_distance: float = None
    zoom_start_scale: float = None
    view_scale: float = 1.0
    prev_frame: object = None

    def hand(self, side):
        return self.left if side == "left" else self.right


def _nearest_node(graph, point, radius, exclude=()):
    best = None
    best_dist = radius
    for node_id in sorted(graph.nodes):
        if node_id in exclude:
            continue
        dist = float(np.linalg.norm(
            np.asarray(graph.nodes[node_id].position3) - point))
        if dist <= best_dist:
            best, best_dist = node_id, dist
    return best


def _nearest_link_midpoint(graph, point, radius):
    best = None
    best_dist = radius
    for link_id in sorted(graph.links):
        link = graph.links[link_id]
        a = np.asarray(graph.nodes[link.source_id].position3)
        b = np.asarray(graph.nodes[link.target_id].position3)
        dist = float(np.linalg.norm((a + b) / 2.0 - point))
        if dist <= best_dist:
            best, best_dist = link_id, dist
    return best


class GestureMachine:
    """Feed frames in time order; collects ops implied by transitions."""

    def __init__(self, config=None):
        self.config = config or GestureConfig()
        self.state = GestureState()

    def step(self, frame, graph):
        state = self.state
        prev = state.prev_frame
        ops = []

        if prev is not None:
            dt = (frame.t - prev.t) / 1000.0
            if dt <= 0:
                raise ValueError("frames must arrive in strictly increasing time order")
            for side in ("left", "right"):
                hand = state.hand(side)
                v = (getattr(frame, side).palm_position
                     - getattr(prev, side).palm_position) / dt
                hand.recent_velocities.append(v)
                del hand.recent_velocities[:-VELOCITY_WINDOW]

        grabbed_elsewhere = {h.node_id for h in (state.left, state.right)
                             if h.mode == "grabbing"}
        releases = {}
        for side in ("left", "right"):
            hand_state = state.hand(side)
            hand = getattr(frame, side)
            prev_posture = getattr(prev, side).posture if prev else POSTURE_FLAT

            if hand_state.mode == "grabbing" and prev_posture == POSTURE_FIST \
                    and hand.posture != POSTURE_FIST:
                releases[side] = hand_state

        # two-hand simultaneous release of two grabbed nodes -> merge
        if len(releases) == 2 and state.left.node_id and state.right.node_id:
            left_node = graph.nodes.get(state.left.node_id)
            right_node = graph.nodes.get(state.right.node_id)
            if left_node is not None and right_node is not None:
                gap = np.linalg.norm(np.asarray(left_node.position3)
                                     - np.asarray(right_node.position3))
                if gap <= self.config.merge_radius:
                    # left hand's node survives (keeps its label and kind)
                    ops.append({"op": "mergeNodes",
                                "survivorId": state.left.node_id,
                                "absorbedId": state.right.node_id})
                    for hand_state in releases.values():
                        hand_state.mode = "idle"
                        hand_state.node_id = None
                    releases = {}

        for side in ("left", "right"):
            hand_state = state.hand(side)
            hand = getattr(frame, side)
            prev_posture = getattr(prev, side).posture if prev else POSTURE_FLAT
            palm = hand.palm_position

            if side in releases:
                speed = float(np.linalg.norm(hand_state.smoothed_velocity()))
                node_id = hand_state.node_id
                hand_state.mode = "idle"
                hand_state.node_id = None
                hand_state.grab_offset = None
                if node_id not in graph.nodes:
                    continue
                if speed > self.config.throw_speed:
                    ops.append({"op": "removeNode", "nodeId": node_id})
                    continue
                other = _nearest_node(graph, palm, self.config.link_radius,
                                      exclude={node_id})
                if other is not None:
                    ops.append({"op": "addLink", "sourceId": node_id,
                                "targetId": other, "label": ""})
                continue

            if hand_state.mode == "grabbing":
                if hand.posture == POSTURE_FIST:
                    if hand_state.node_id in graph.nodes:
                        target = palm + hand_state.grab_offset
                        ops.append({"op": "moveNode",
                                    "nodeId": hand_state.node_id,
                                    "position": [float(c) for c in target]})
                    continue
                hand_state.mode = "idle"
                hand_state.node_id = None
                continue

            if hand_state.mode == "pulling":
                if hand.posture != POSTURE_PINCH or hand_state.link_id not in graph.links:
                    hand_state.mode = "idle"
                    hand_state.link_id = None
                    continue
                if np.linalg.norm(palm - hand_state.pull_anchor) > self.config.pull_distance:
                    ops.append({"op": "removeLink", "linkId": hand_state.link_id})
                    hand_state.mode = "idle"
                    hand_state.link_id = None
                continue

            # idle hand: look for a transition
            if prev_posture == POSTURE_FLAT and hand.posture == POSTURE_FIST:
                node_id = _nearest_node(graph, palm, self.config.grab_radius,
                                        exclude=grabbed_elsewhere)
                if node_id is not None:
                    hand_state.mode = "grabbing"
                    hand_state.node_id = node_id
                    hand_state.grab_offset = (
                        np.asarray(graph.nodes[node_id].position3) - palm)
                    grabbed_elsewhere.add(node_id)
            elif prev_posture != POSTURE_PINCH and hand.posture == POSTURE_PINCH:
                link_id = _nearest_link_midpoint(graph, palm, self.config.grab_radius)
                if link_id is not None:
                    hand_state.mode = "pulling"
                    hand_state.link_id = link_id
                    hand_state.pull_anchor = palm.copy()

        ops.extend(self._zoom_step(frame))
        state.prev_frame = frame
        return ops

    def _zoom_step(self, frame):
        state = self.state
        both_fists = (frame.left.posture == POSTURE_FIST
                      and frame.right.posture == POSTURE_FIST)
        hands_free = state.left.mode != "grabbing" and state.right.mode != "grabbing"
        if both_fists and hands_free:
            distance = float(np.linalg.norm(
                frame.left.palm_position - frame.right.palm_position))
            if state.zoom_start_distance is None:
                state.zoom_start_distance = distance
                state.zoom_start_scale = state.view_scale
                return []
            if state.zoom_start_distance > 1e-9:
                state.view_scale = (state.zoom_start_scale
                                    * distance / state.zoom_start_distance)
                # local viewing aid, never replicated
                return [{"op": "zoomView", "scale": state.view_scale,
                         "local": True}]
            return []
        state.zoom_start_distance = None
        state.zoom_start_scale = None
        return []


def gesture_step(frame, state_machine, graph):
    """Functional wrapper around GestureMachine.step."""
    return state_machine.step(frame, graph)
