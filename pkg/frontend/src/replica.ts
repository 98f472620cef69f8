/** Replica apply logic: seq-ordered broadcast application plus hash
 * verification against the server-advertised digest. */

import { GraphState, applyOpBody, graphFromSnapshot } from "./graph.js";
import { snapshotHash } from "./hash.js";
import { Message, ProtocolError } from "./protocol.js";

export class ReplicaState {
  graph = new GraphState();
  errors: any[] = [];
  applied: Message[] = [];

  loadSnapshot(snapshot: any, seq: number): void {
    this.graph = graphFromSnapshot(snapshot);
    this.graph.seq = seq;
  }

  applyMessage(message: Message): void {
    const kind = message.type;
    if (kind === "OpApplied" || kind === "SelectionApplied") {
      const seq = message.seq as number;
      if (seq <= this.graph.seq) {
        return; // duplicate delivery after a resync overlap
      }
      if (seq !== this.graph.seq + 1) {
        throw new ProtocolError(`gap: replica at ${this.graph.seq}, got ${seq}`);
      }
      const body = message.payload.body;
      applyOpBody(this.graph, body, message.device);
      this.graph.seq = seq;
      if (body.op === "setSelection") {
        this.graph.selections.seq = seq;
      }
      this.applied.push(message);
      const expected = message.payload.hash;
      if (expected !== undefined && expected !== null
          && expected !== this.hash()) {
        throw new ProtocolError(`replica hash mismatch at seq ${seq}`);
      }
    } else if (kind === "Snapshot") {
      this.loadSnapshot(message.payload.snapshot, message.payload.seq);
    } else if (kind === "Error") {
      this.errors.push(message.payload);
    }
  }

  hash(): string {
    return snapshotHash(this.graph);
  }
}
