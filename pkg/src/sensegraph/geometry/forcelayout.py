"""Spring-embedder refinement (Fruchterman-Reingold style) plus the
clutter metric it is judged against.

clutter = (node pairs closer than MIN_SEPARATION) + (properly crossing
edge pairs). force_refine never worsens it: if the annealed layout scores
higher than the input, the input is returned unchanged.
"""

import itertools
from dataclasses import dataclass

import numpy as np

NODE_RENDER_RADIUS = 0.05  # canvas units
MIN_SEPARATION = NODE_RENDER_RADIUS * 2


@dataclass
class LayoutParams:
    ideal_edge_length: float = 1.0
    repulsion_constant: float = 1.0
    iteration_count: int = 50
    initial_temperature: float = 0.5
    cooling_factor: float = 0.95
    random_seed: int = 0

    def __post_init__(self):
        if self.iteration_count < 0:
            raise ValueError("iteration_count must be >= 0")
        if not 0 < self.cooling_factor <= 1:
            raise ValueError("cooling_factor must be in (0, 1]")


def _segments_cross(p1, p2, p3, p4):
    """Proper crossing: intersection interior to both segments."""
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) \
        and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0


def clutter_metric(positions, edges, min_separation=MIN_SEPARATION):
    """positions: {nodeId: (x, y)}; edges: iterable of (sourceId, targetId)."""
    ids = sorted(positions)
    pts = {i: np.asarray(positions[i], dtype=float) for i in ids}
    close_pairs = sum(
        1 for a, b in itertools.combinations(ids, 2)
        if np.linalg.norm(pts[a] - pts[b]) < min_separation)

    edge_list = [(a, b) for a, b in edges if a in pts and b in pts and a != b]
    crossings = 0
    for (a1, b1), (a2, b2) in itertools.combinations(edge_list, 2):
        if {a1, b1} & {a2, b2}:
            continue  # shared endpoint is not a crossing
        if _segments_cross(pts[a1], pts[b1], pts[a2], pts[b2]):
            crossings += 1
    return close_pairs + crossings


def force_refine(positions, edges, params=None):
    """Refine a 2D layout; deterministic given params.random_seed (the
    seed only jitters exactly coincident nodes apart)."""
    params = params or LayoutParams()
    ids = sorted(positions)
    n = len(ids)
    if n == 0 or params.iteration_count == 0:
        return {i: [float(positions[i][0]), float(positions[i][1])] for i in ids}

    index = {node_id: i for i, node_id in enumerate(ids)}
    pts = np.array([[positions[i][0], positions[i][1]] for i in ids], dtype=float)
    edge_idx = [(index[a], index[b]) for a, b in edges
                if a in index and b in index and a != b]
    rng = np.random.default_rng(params.random_seed)
    k = params.ideal_edge_length
    temperature = params.initial_temperature
    before = clutter_metric(positions, edges)

    refined = pts.copy()
    for _ in range(params.iteration_count):
        delta = refined[:, None, :] - refined[None, :, :]
        dist = np.linalg.norm(delta, axis=2)
        coincident = dist < 1e-12
        np.fill_diagonal(coincident, False)
        if coincident.any():
            # break exact ties so repulsion has a direction to act along
            jitter = rng.normal(scale=1e-6, size=refined.shape)
            refined = refined + jitter
            delta = refined[:, None, :] - refined[None, :, :]
            dist = np.linalg.norm(delta, axis=2)
        np.fill_diagonal(dist, np.inf)

        repulsion = params.repulsion_constant * (k * k) / dist
        disp = (delta / dist[:, :, None] * repulsion[:, :, None]).sum(axis=1)

        for a, b in edge_idx:
            d = refined[a] - refined[b]
            length = np.linalg.norm(d)
            if length < 1e-12:
                continue
            pull = (length * length / k) * (d / length)
            disp[a] -= pull
            disp[b] += pull

        lengths = np.linalg.norm(disp, axis=1)
        capped = np.where(lengths > temperature,
                          temperature / np.maximum(lengths, 1e-300), 1.0)
        refined = refined + disp * capped[:, None]
        temperature *= params.cooling_factor

    result = {node_id: [float(refined[i, 0]), float(refined[i, 1])]
              for node_id, i in index.items()}
    if clutter_metric(result, edges) > before:
        return {i: [float(positions[i][0]), float(positions[i][1])] for i in ids}
    return result
