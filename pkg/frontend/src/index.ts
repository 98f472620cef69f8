export * from "./protocol.js";
export * from "./timeparse.js";
export * from "./graph.js";
export * from "./hash.js";
export * from "./replica.js";
export * from "./client.js";
export * from "./views.js";
export * from "./config.js";
