"""Operator entry points.

Human-readable output goes to stdout; machine-readable diagnostics are
one JSON object per line on stderr. Configuration precedence is
flags > environment variables > config file > defaults.
"""

import asyncio
import json
import signal
import sys

import click
from click.core import ParameterSource

from . import analytics, corpus, geometry
from . import graph as g
from .errors import SenseGraphError
from .geometry.transforms import Pose
from .simulate.scenario import Scenario, run_scenario
from .sync.events import replay_log
from .sync.server import SessionServer
from .sync.poses import read_pose_log
from .sync.session import Session

ENV_PREFIX = "SENSEGRAPH"


def _diagnostic(code, message, **extra):
    record = {"error": code, "message": message}
    record.update(extra)
    click.echo(json.dumps(record, sort_keys=True), err=True)


def _fail(code, message, exit_code=2, **extra):
    _diagnostic(code, message, **extra)
    sys.exit(exit_code)


def _merge_config(ctx, config_path):
    """Apply config-file values to params the user left at their defaults."""
    if not config_path:
        return
    with open(config_path, "r", encoding="utf-8") as fh:
        values = json.load(fh)
    for name, value in values.items():
        key = name.replace("-", "_")
        if key in ctx.params and ctx.get_parameter_source(key) == ParameterSource.DEFAULT:
            ctx.params[key] = value


def _load_screen(screen_json):
    if not screen_json:
        return geometry.ScreenGeometry(32.0, 2560, 1440)
    with open(screen_json, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    pose = Pose()
    if "pose" in data:
        pose = Pose(position=data["pose"].get("position", [0, 0, 0]),
                    orientation=data["pose"].get("orientation", [0, 0, 0, 1]))
    return geometry.ScreenGeometry(
        diagonal_inches=data["diagonalInches"],
        resolution_w=data["resolutionW"], resolution_h=data["resolutionH"],
        pose=pose)


@click.group()
def main():
    """Cross-device sensemaking session tools."""


@main.command()
@click.option("--listen", default="127.0.0.1:7340", show_default=True,
              envvar=f"{ENV_PREFIX}_LISTEN", help="host:port to listen on")
@click.option("--session", "session_id", default="default", show_default=True,
              envvar=f"{ENV_PREFIX}_SESSION")
@click.option("--corpus", "corpus_path", default=None,
              envvar=f"{ENV_PREFIX}_CORPUS",
              help="corpus directory (documents/ + manifest.json)")
@click.option("--pose-log-hz", default=10.0, show_default=True,
              envvar=f"{ENV_PREFIX}_POSE_LOG_HZ")
@click.option("--event-log", default=None, envvar=f"{ENV_PREFIX}_EVENT_LOG",
              help="JSONL file for the session event log")
@click.option("--pose-log", default=None, envvar=f"{ENV_PREFIX}_POSE_LOG",
              help="JSONL file for the downsampled pose log")
@click.option("--config", "config_path", default=None,
              envvar=f"{ENV_PREFIX}_CONFIG", help="JSON config file")
@click.pass_context
def serve(ctx, listen, session_id, corpus_path, pose_log_hz, event_log,
          pose_log, config_path):
    """Host a session until interrupted; logs flush on shutdown."""
    _merge_config(ctx, config_path)
    listen = ctx.params["listen"]
    corpus_path = ctx.params["corpus_path"]
    pose_log_hz = ctx.params["pose_log_hz"]

    manifest = None
    documents = {}
    if corpus_path:
        try:
            documents, manifest_obj = corpus.load_corpus(corpus_path)
            manifest = manifest_obj.to_dict()
        except (OSError, ValueError, KeyError) as exc:
            _fail("BadCorpus", str(exc))
    try:
        host, port = listen.rsplit(":", 1)
        port = int(port)
    except ValueError:
        _fail("BadConfig", f"--listen must be host:port, got {listen!r}")

    event_fh = open(ctx.params["event_log"], "a", encoding="utf-8") \
        if ctx.params["event_log"] else None
    pose_fh = open(ctx.params["pose_log"], "a", encoding="utf-8") \
        if ctx.params["pose_log"] else None
    session = Session(session_id=ctx.params["session_id"],
                      corpus_manifest=manifest, pose_log_hz=pose_log_hz,
                      event_log_file=event_fh, pose_log_file=pose_fh)
    for doc in sorted(documents.values(), key=lambda d: d.id):
        session.seed_anchor(doc.id, doc.title)

    async def run():
        server = await SessionServer(session, host, port).start()
        click.echo(f"listening on {server.endpoint} session={session.session_id}")
        stop = asyncio.Event()
        loop = asyncio.get_running_loop()
        for sig in (signal.SIGINT, signal.SIGTERM):
            loop.add_signal_handler(sig, stop.set)
        try:
            await stop.wait()
        finally:
            await server.stop()

    try:
        asyncio.run(run())
    except OSError as exc:
        _fail("PortBusy", str(exc))
    finally:
        session.flush()
        for fh in (event_fh, pose_fh):
            if fh is not None:
                fh.close()
    click.echo(f"shut down at seq {session.graph.seq}")


@main.command("generate-corpus")
@click.option("--seed", default=0, show_default=True,
              envvar=f"{ENV_PREFIX}_SEED")
@click.option("--out", "out_dir", required=True, type=click.Path())
def generate_corpus_cmd(seed, out_dir):
    """Write a deterministic synthetic corpus and its manifest."""
    documents, manifest = corpus.generate_corpus(seed=seed)
    corpus.write_corpus(documents, manifest, out_dir)
    for name, total in manifest.total_word_counts.items():
        click.echo(f"subplot {name}: {manifest.per_subplot_counts[name]} "
                   f"documents, {total} words")
    click.echo(f"corpus written to {out_dir}")


@main.command()
@click.argument("log_path", type=click.Path(exists=True))
@click.option("--out", "out_path", default=None,
              help="snapshot file to write (default: stdout summary only)")
def replay(log_path, out_path):
    """Replay an event log into a snapshot and print its hash."""
    try:
        graph = replay_log(log_path)
    except SenseGraphError as exc:
        _fail(exc.code, str(exc),
              lastGoodSeq=getattr(exc, "last_good_seq", None))
    blob = g.dumps_snapshot(graph)
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(blob)
    click.echo(f"replayed seq {graph.seq}: {len(graph.nodes)} nodes, "
               f"{len(graph.links)} links")
    click.echo(f"hash {g.snapshot_hash(graph)}")


@main.command()
@click.option("--events", "events_path", required=True,
              type=click.Path(exists=True), help="event log JSONL")
@click.option("--poses", "poses_path", default=None, type=click.Path(exists=True),
              help="pose log JSONL")
@click.option("--switch-threshold", default=analytics.DEFAULT_SWITCH_THRESHOLD,
              show_default=True, envvar=f"{ENV_PREFIX}_SWITCH_THRESHOLD")
@click.option("--dwell-ms", default=2000, show_default=True,
              envvar=f"{ENV_PREFIX}_DWELL_MS")
@click.option("--jitter-floor", default=0.005, show_default=True,
              envvar=f"{ENV_PREFIX}_JITTER_FLOOR")
@click.option("--screen-json", default=None, type=click.Path(exists=True),
              help="screen geometry JSON (diagonalInches/resolutionW/H/pose)")
@click.option("--out", "out_path", default=None)
@click.option("--segments-csv", "csv_path", default=None)
def analyze(events_path, poses_path, switch_threshold, dwell_ms, jitter_floor,
            screen_json, out_path, csv_path):
    """Build a strategy report from session logs."""
    from .sync.events import read_event_log
    try:
        events = read_event_log(events_path)
    except SenseGraphError as exc:
        _fail(exc.code, str(exc))
    poses = read_pose_log(poses_path) if poses_path else []
    config = analytics.AnalyticsConfig(
        switch_threshold=switch_threshold, min_dwell_ms=dwell_ms,
        jitter_floor_m=jitter_floor)
    report = analytics.build_report(events, poses, _load_screen(screen_json),
                                    config=config)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    if csv_path:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(report.segments_csv())
    click.echo(f"temporal={report.temporal} spatial={report.spatial} "
               f"pcFraction={report.pc_fraction:.3f} "
               f"switches={report.switch_count}")


@main.command()
@click.argument("scenario_path", type=click.Path(exists=True))
@click.option("--endpoint", required=True, help="host:port of a live server")
@click.option("--session", "session_id", default="default", show_default=True)
@click.option("--realtime/--no-realtime", default=False, show_default=True)
def simulate(scenario_path, endpoint, session_id, realtime):
    """Drive a scripted scenario; exit 0 iff all expectations hold."""
    try:
        scenario = Scenario.load(scenario_path)
    except (SenseGraphError, json.JSONDecodeError) as exc:
        _fail("BadScenario", str(exc))
    host, port = endpoint.rsplit(":", 1)
    result = run_scenario(scenario, host, int(port), session_id,
                          realtime=realtime)
    for check in result.checks:
        status = "ok" if check["ok"] else "FAIL"
        click.echo(f"[{status}] {json.dumps(check['expect'])} -> {check['detail']}")
    if not result.ok:
        _fail("ExpectationFailed",
              f"{sum(not c['ok'] for c in result.checks)} expectation(s) failed",
              exit_code=1)
    click.echo(f"{len(result.checks)} expectation(s) hold, "
               f"{len(result.transcript)} actions sent")


@main.command()
@click.argument("snapshot_path", type=click.Path(exists=True))
@click.option("--params", "params_path", default=None, type=click.Path(exists=True),
              help="LayoutParams JSON")
@click.option("--out", "out_path", default=None)
@click.option("--metrics-out", "metrics_path", default=None)
def layout(snapshot_path, params_path, out_path, metrics_path):
    """Project a snapshot to 2D and refine it with the spring embedder."""
    with open(snapshot_path, "rb") as fh:
        graph = g.graph_from_snapshot(fh.read())
    params = geometry.LayoutParams()
    if params_path:
        with open(params_path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        params = geometry.LayoutParams(
            ideal_edge_length=raw.get("idealEdgeLength", params.ideal_edge_length),
            repulsion_constant=raw.get("repulsionConstant", params.repulsion_constant),
            iteration_count=raw.get("iterationCount", params.iteration_count),
            initial_temperature=raw.get("initialTemperature", params.initial_temperature),
            cooling_factor=raw.get("coolingFactor", params.cooling_factor),
            random_seed=raw.get("randomSeed", params.random_seed))
    positions = geometry.project_node_positions(graph)
    edges = [(l.source_id, l.target_id) for l in graph.links.values()]
    before = geometry.clutter_metric(positions, edges)
    refined = geometry.force_refine(positions, edges, params)
    after = geometry.clutter_metric(refined, edges)
    metrics = {"clutterBefore": before, "clutterAfter": after,
               "iterations": params.iteration_count, "seed": params.random_seed}
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(refined, fh, sort_keys=True)
            fh.write("\n")
    if metrics_path:
        with open(metrics_path, "w", encoding="utf-8") as fh:
            json.dump(metrics, fh, sort_keys=True)
            fh.write("\n")
    click.echo(f"{len(positions)} nodes laid out; clutter {before} -> {after}")


if __name__ == "__main__":
    main()
