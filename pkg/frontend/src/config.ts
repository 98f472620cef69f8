/** Client configuration from URL query parameters {server, session, device}. */

export interface ClientConfig {
  host: string;
  port: number;
  session: string;
  device: string;
}

export const DEFAULTS: ClientConfig = {
  host: "127.0.0.1",
  port: 8765,
  session: "default",
  device: "web-1",
};

/** Parse "?server=host:port&session=s&device=d"; missing params fall back
 * to the defaults above. */
export function parseConfig(url: string): ClientConfig {
  const query = new URL(url, "http://localhost/").searchParams;
  const config = { ...DEFAULTS };
  const server = query.get("server");
  if (server) {
    const idx = server.lastIndexOf(":");
    if (idx <= 0 || idx === server.length - 1) {
      throw new Error(`server must be host:port, got ${JSON.stringify(server)}`);
    }
    config.host = server.slice(0, idx);
    const port = Number(server.slice(idx + 1));
    if (!Number.isInteger(port) || port <= 0 || port > 65535) {
      throw new Error(`invalid port in ${JSON.stringify(server)}`);
    }
    config.port = port;
  }
  config.session = query.get("session") ?? config.session;
  config.device = query.get("device") ?? config.device;
  return config;
}
