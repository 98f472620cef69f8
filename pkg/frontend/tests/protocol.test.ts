import { describe, expect, it } from "vitest";
import {
  FrameSplitter, ProtocolError, decodeLine, encodeMessage, makeMessage,
} from "../src/protocol.js";

describe("message envelope", () => {
  it("round-trips through encode/decode", () => {
    const msg = makeMessage("Op", "s1", "web-1", { body: { op: "moveNode" } });
    const back = decodeLine(encodeMessage(msg).trimEnd());
    expect(back).toEqual(msg);
  });

  it("rejects malformed JSON", () => {
    expect(() => decodeLine("{nope")).toThrow(ProtocolError);
  });

  it("rejects non-object lines", () => {
    expect(() => decodeLine("[1,2]")).toThrow(ProtocolError);
  });

  it("rejects missing envelope fields", () => {
    expect(() => decodeLine(
      JSON.stringify({ type: "Op", session: "s", device: "d", payload: {} }),
    )).toThrow(ProtocolError);
  });

  it("rejects unknown message types", () => {
    expect(() => decodeLine(JSON.stringify({
      type: "Nope", session: "s", device: "d", seq: null, payload: {},
    }))).toThrow(ProtocolError);
  });
});

describe("FrameSplitter", () => {
  it("reassembles lines across arbitrary chunk boundaries", () => {
    const splitter = new FrameSplitter();
    const lines: string[] = [];
    for (const chunk of ['{"a"', ':1}\n{"b":2}\n{"c"', ":3}", "\n"]) {
      lines.push(...splitter.push(chunk));
    }
    expect(lines).toEqual(['{"a":1}', '{"b":2}', '{"c":3}']);
  });

  it("holds an incomplete trailing line", () => {
    const splitter = new FrameSplitter();
    expect(splitter.push("partial")).toEqual([]);
    expect(splitter.push(" line\nnext")).toEqual(["partial line"]);
  });
});
