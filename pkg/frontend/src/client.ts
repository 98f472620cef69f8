/** TCP session client for the newline-JSON sync protocol (Node runtime). */

import { Socket, createConnection } from "node:net";
import {
  FrameSplitter, Message, ProtocolError, decodeLine, encodeMessage,
  makeMessage,
} from "./protocol.js";
import { ReplicaState } from "./replica.js";

export interface ClientOptions {
  host: string;
  port: number;
  session: string;
  device: string;
  deviceKind?: string;
}

export class WebClient {
  readonly host: string;
  readonly port: number;
  readonly session: string;
  readonly device: string;
  readonly deviceKind: string;
  readonly replica = new ReplicaState();
  lastWelcome: Message | null = null;
  corpus: any = null;

  private socket: Socket | null = null;
  private splitter = new FrameSplitter();
  private applyWaiters: Array<() => void> = [];
  private listeners: Array<(message: Message) => void> = [];

  constructor(options: ClientOptions) {
    this.host = options.host;
    this.port = options.port;
    this.session = options.session;
    this.device = options.device;
    this.deviceKind = options.deviceKind ?? "pc";
  }

  /** Open the connection, send Hello, and resolve once Welcome loads. */
  connect(timeoutMs = 5000): Promise<Message> {
    return new Promise((resolve, reject) => {
      const socket = createConnection({ host: this.host, port: this.port });
      this.socket = socket;
      const timer = setTimeout(
        () => reject(new ProtocolError("timed out waiting for Welcome")),
        timeoutMs);
      let welcomed = false;
      socket.setEncoding("utf8");
      socket.on("error", (err) => {
        if (!welcomed) { clearTimeout(timer); reject(err); }
      });
      socket.on("data", (chunk: string) => {
        for (const line of this.splitter.push(chunk)) {
          const message = decodeLine(line);
          if (!welcomed) {
            welcomed = true;
            clearTimeout(timer);
            if (message.type === "Error") {
              reject(new ProtocolError(
                message.payload?.message ?? "join failed"));
              return;
            }
            this.lastWelcome = message;
            this.corpus = message.payload.corpus ?? null;
            this.replica.loadSnapshot(message.payload.snapshot,
                                      message.payload.seq);
            resolve(message);
          } else {
            this.handleMessage(message);
          }
        }
      });
      socket.on("connect", () => {
        this.send("Hello", { deviceKind: this.deviceKind });
      });
    });
  }

  close(): void {
    this.socket?.destroy();
    this.socket = null;
  }

  onMessage(listener: (message: Message) => void): void {
    this.listeners.push(listener);
  }

  private handleMessage(message: Message): void {
    this.replica.applyMessage(message);
    for (const waiter of this.applyWaiters.splice(0)) waiter();
    for (const listener of this.listeners) listener(message);
  }

  private send(type: Message["type"], payload: any): void {
    if (!this.socket) throw new ProtocolError("not connected");
    this.socket.write(
      encodeMessage(makeMessage(type, this.session, this.device, payload)));
  }

  submitOp(body: any): void {
    this.send("Op", { body });
  }

  setSelection(selectionBody: any): void {
    this.send("Selection", selectionBody);
  }

  sendPose(kind: string, t: number, position: number[],
           orientation: number[]): void {
    this.send("Pose", { kind, t, position, orientation });
  }

  resync(fromSeq?: number): void {
    this.send("ResyncRequest",
              { fromSeq: fromSeq ?? this.replica.graph.seq });
  }

  hash(): string {
    return this.replica.hash();
  }

  /** Resolve when `predicate()` is true; re-checked on every applied
   * message and on a coarse poll so external state changes count too. */
  waitFor(predicate: () => boolean, timeoutMs = 5000,
          what = "condition"): Promise<void> {
    return new Promise((resolve, reject) => {
      if (predicate()) { resolve(); return; }
      const timer = setTimeout(() => {
        reject(new ProtocolError(`timed out waiting for ${what}`));
      }, timeoutMs);
      const check = () => {
        if (predicate()) {
          clearTimeout(timer);
          clearInterval(poll);
          resolve();
        } else {
          this.applyWaiters.push(check);
        }
      };
      const poll = setInterval(() => { if (predicate()) check(); }, 25);
      this.applyWaiters.push(check);
    });
  }

  waitForSeq(seq: number, timeoutMs = 5000): Promise<void> {
    return this.waitFor(() => this.replica.graph.seq >= seq, timeoutMs,
                        `seq ${seq}`);
  }
}
