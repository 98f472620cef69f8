from .foot import FloorMarker, FootTracker, place_timeline_on_floor
from .frames import POSTURE_FIST, POSTURE_FLAT, POSTURE_PINCH, Hand, HandFrame
from .gestures import GestureConfig, GestureMachine, GestureState, gesture_step
from .rays import RectTarget, SphereTarget, ray_select
from .scenario import Scenario, ScenarioResult, run_scenario, run_scenario_async
from .text import (
    DocumentLayout, make_document_layout, pick_up_document, text_select,
    wrap_body,
)
