import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from sensegraph.geometry import (
    Pose, align_simulated_screen, billboard_orientation, calibrate_offset,
    quat_multiply, quat_normalize, quat_rotate,
)


def _random_pose(rng):
    return Pose(position=rng.normal(size=3),
                orientation=quat_normalize(rng.normal(size=4)))


def _quat_close(a, b, tol=1e-9):
    # q and -q are the same rotation
    return min(np.abs(a - b).max(), np.abs(a + b).max()) < tol


def test_quat_rotate_matches_scipy_oracle():
    rng = np.random.default_rng(7)
    for _ in range(200):
        q = quat_normalize(rng.normal(size=4))
        v = rng.normal(size=3)
        expected = Rotation.from_quat(q).apply(v)
        assert np.allclose(quat_rotate(q, v), expected, atol=1e-12)


def test_quat_multiply_matches_scipy_oracle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        a = quat_normalize(rng.normal(size=4))
        b = quat_normalize(rng.normal(size=4))
        expected = (Rotation.from_quat(a) * Rotation.from_quat(b)).as_quat()
        assert _quat_close(quat_multiply(a, b), expected)


def test_identity_offset_keeps_tracker_pose():
    tracker = Pose(position=[1, 2, 3], orientation=[0, 0.5, 0, 0.8660254037844387])
    screen = align_simulated_screen(tracker, Pose())
    assert np.allclose(screen.position, tracker.position)
    assert _quat_close(screen.orientation, tracker.orientation)


def test_translation_moves_screen_identically():
    offset = Pose(position=[0.1, 0.0, -0.2])
    base = align_simulated_screen(Pose(position=[0, 0, 0]), offset)
    moved = align_simulated_screen(Pose(position=[1, 0, 0]), offset)
    assert np.allclose(moved.position - base.position, [1, 0, 0])


def test_calibrate_equal_poses_gives_identity():
    pose = Pose(position=[1, 2, 3], orientation=quat_normalize([1, 2, 3, 4]))
    offset = calibrate_offset(pose, pose)
    assert np.allclose(offset.position, 0, atol=1e-12)
    assert _quat_close(offset.orientation, np.array([0, 0, 0, 1.0]))


def test_calibrate_pure_translation():
    tracker = Pose(position=[1, 0, 0])
    desired = Pose(position=[1, 0, 2])
    offset = calibrate_offset(tracker, desired)
    assert _quat_close(offset.orientation, np.array([0, 0, 0, 1.0]))
    assert np.allclose(offset.position, [0, 0, 2])


def test_calibration_roundtrip_1000_random_pairs():
    rng = np.random.default_rng(42)
    worst_pos = worst_quat = 0.0
    for _ in range(1000):
        tracker = _random_pose(rng)
        desired = _random_pose(rng)
        offset = calibrate_offset(tracker, desired)
        assert abs(np.linalg.norm(offset.orientation) - 1) < 1e-9
        screen = align_simulated_screen(tracker, offset)
        worst_pos = max(worst_pos, np.abs(screen.position - desired.position).max())
        diff = min(np.abs(screen.orientation - desired.orientation).max(),
                   np.abs(screen.orientation + desired.orientation).max())
        worst_quat = max(worst_quat, diff)
    assert worst_pos < 1e-9
    assert worst_quat < 1e-9


def test_billboard_faces_viewer():
    q = billboard_orientation([0, 0, 0], [0, 0, 5])
    assert _quat_close(q, np.array([0, 0, 0, 1.0]))  # +z already at viewer


def test_billboard_behind_is_yaw_180():
    q = billboard_orientation([0, 0, 0], [0, 0, -5])
    fwd = quat_rotate(q, [0, 0, 1])
    up = quat_rotate(q, [0, 1, 0])
    assert np.allclose(fwd, [0, 0, -1], atol=1e-12)
    assert np.allclose(up, [0, 1, 0], atol=1e-12)  # roll-free


def test_billboard_degenerate_falls_back():
    previous = quat_normalize([0.3, 0.1, 0.2, 0.9])
    q = billboard_orientation([0, 0, 0], [0, 5, 0], previous=previous)
    assert _quat_close(q, previous)
    q_default = billboard_orientation([0, 0, 0], [0, 5, 0])
    assert _quat_close(q_default, np.array([0, 0, 0, 1.0]))


def test_billboard_outputs_unit_quaternions():
    rng = np.random.default_rng(3)
    for _ in range(500):
        q = billboard_orientation(rng.normal(size=3), rng.normal(size=3))
        assert abs(np.linalg.norm(q) - 1) < 1e-9
        fwd = quat_rotate(q, [0, 0, 1])
        up = quat_rotate(q, [0, 1, 0])
        assert abs(np.dot(fwd, up)) < 1e-9
