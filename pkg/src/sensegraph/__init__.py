"""sensegraph: a cross-device sensemaking platform — a replicated
node-link diagram shared between PC and (simulated) VR clients, the
session protocol that keeps them converged, display geometry, headless
interaction simulators, and usage-strategy analytics over the logs."""

__version__ = "0.1.0"

from . import analytics, corpus, errors, geometry, graph, simulate, sync
