/** End-to-end brushing against a live session server.
 *
 * Spawns the Python server and a headless VR driver as subprocesses, joins
 * with the web client over TCP, and checks:
 *   - a node selected by the VR client is highlighted in the web views in
 *     under 200 ms, and the reverse direction too;
 *   - after 50 interactive ops from both devices the web replica hash
 *     equals the server-advertised hash (verified per-op as well).
 */

import { ChildProcess, spawn } from "node:child_process";
import { connect } from "node:net";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { WebClient } from "../src/client.js";
import { graphView, timelineView } from "../src/views.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const PKG_ROOT = join(HERE, "..", "..");
const DRIVER = join(HERE, "helpers", "vr_driver.py");
const SESSION = "e2e";
const HOST = "127.0.0.1";
const PORT = 7401 + (process.pid % 500);

let server: ChildProcess;
let driver: ChildProcess;
let driverLines: string[] = [];
let driverWaiters: Array<(line: string) => void> = [];
let web: WebClient;

function onDriverLine(line: string) {
  const waiter = driverWaiters.shift();
  if (waiter) waiter(line);
  else driverLines.push(line);
}

function nextDriverLine(timeoutMs = 5000): Promise<string> {
  const queued = driverLines.shift();
  if (queued !== undefined) return Promise.resolve(queued);
  return new Promise((resolve, reject) => {
    const timer = setTimeout(
      () => reject(new Error("timed out waiting for driver output")),
      timeoutMs);
    driverWaiters.push((line) => { clearTimeout(timer); resolve(line); });
  });
}

function waitForPort(port: number, timeoutMs = 15000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  return new Promise((resolve, reject) => {
    const attempt = () => {
      const sock = connect({ host: HOST, port }, () => {
        sock.destroy();
        resolve();
      });
      sock.on("error", () => {
        sock.destroy();
        if (Date.now() > deadline) reject(new Error("server never listened"));
        else setTimeout(attempt, 100);
      });
    };
    attempt();
  });
}

beforeAll(async () => {
  const logDir = mkdtempSync(join(tmpdir(), "sensegraph-e2e-"));
  server = spawn("python3", [
    "-m", "sensegraph.cli", "serve",
    "--listen", `${HOST}:${PORT}`, "--session", SESSION,
    "--event-log", join(logDir, "events.jsonl"),
  ], { cwd: PKG_ROOT, stdio: ["ignore", "pipe", "pipe"] });
  await waitForPort(PORT);

  driver = spawn("python3", [DRIVER, HOST, String(PORT), SESSION],
                 { cwd: PKG_ROOT, stdio: ["pipe", "pipe", "pipe"] });
  let buffer = "";
  driver.stdout!.setEncoding("utf8");
  driver.stdout!.on("data", (chunk: string) => {
    buffer += chunk;
    let idx;
    while ((idx = buffer.indexOf("\n")) >= 0) {
      onDriverLine(buffer.slice(0, idx).trim());
      buffer = buffer.slice(idx + 1);
    }
  });
  expect(await nextDriverLine(10000)).toBe("ready");

  web = new WebClient({ host: HOST, port: PORT, session: SESSION,
                        device: "web-1", deviceKind: "pc" });
  await web.connect();
}, 30000);

afterAll(async () => {
  web?.close();
  driver?.stdin?.write("quit\n");
  driver?.kill();
  server?.kill("SIGTERM");
  await new Promise((r) => setTimeout(r, 300));
});

describe("end-to-end brushing", () => {
  it("replica hash equals server hash after 50 interactive ops", async () => {
    const startSeq = web.replica.graph.seq;
    for (let i = 0; i < 50; i++) {
      const target = startSeq + i + 1;
      const ids = [...web.replica.graph.nodes.keys()].sort();
      if (i % 2 === 1) {
        driver.stdin!.write(`addnode vr item ${i}\n`);
      } else if (i % 10 === 6 && ids.length >= 2) {
        web.submitOp({ op: "addLink", sourceId: ids[0],
                       targetId: ids[ids.length - 1], label: `rel ${i}` });
      } else if (i % 10 === 8 && ids.length >= 1) {
        web.submitOp({ op: "moveNode", nodeId: ids[0],
                       position: [i * 0.1, 0.5, -1.0] });
      } else {
        const label = i % 4 === 0 ? `March ${1 + (i % 28)}, 2007`
                                  : `web item ${i}`;
        web.submitOp({ op: "addNode", label,
                       position: [i * 0.2, 1.0, 0.0] });
      }
      // Per-op hash verification happens inside applyMessage; a mismatch
      // would throw out of this wait.
      await web.waitForSeq(target);
    }
    expect(web.replica.graph.seq).toBe(startSeq + 50);
    const last = web.replica.applied[web.replica.applied.length - 1];
    expect(last.payload.hash).toBe(web.hash());
    expect(web.replica.errors).toEqual([]);
  }, 30000);

  it("VR-side selection highlights in the web views within 200 ms", async () => {
    const ids = [...web.replica.graph.nodes.keys()].sort();
    const target = ids[0];
    const t0 = performance.now();
    driver.stdin!.write(`select ${target}\n`);
    await web.waitFor(
      () => web.replica.graph.selections.selectedNodeIds.has(target),
      2000, "VR selection to reach the web replica");
    const elapsed = performance.now() - t0;
    expect(elapsed).toBeLessThan(200);
    const { nodes } = graphView(web.replica.graph);
    expect(nodes.find((n) => n.id === target)!.selected).toBe(true);
  });

  it("web-side selection reaches the VR replica within 200 ms", async () => {
    const timeNode = [...web.replica.graph.nodes.values()]
      .find((n) => n.kind === "time")!;
    const t0 = performance.now();
    web.setSelection({ selectedNodeIds: [timeNode.id] });
    const line = await nextDriverLine(2000);
    const elapsed = performance.now() - t0;
    expect(line).toBe(`applied ${timeNode.id}`);
    expect(elapsed).toBeLessThan(200);
    // the web timeline highlights the same node once the echo lands
    await web.waitFor(
      () => web.replica.graph.selections.selectedNodeIds.has(timeNode.id),
      2000, "selection echo");
    const entry = timelineView(web.replica.graph)
      .find((e) => e.id === timeNode.id)!;
    expect(entry.selected).toBe(true);
  });
});
