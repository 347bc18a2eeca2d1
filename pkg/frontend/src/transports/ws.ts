// Browser transport: the station's WebSocket bridge carries exactly the wire
// protocol, one JSON message per WS frame.

import type { Transport } from "../client";

export class WebSocketTransport implements Transport {
  private ws: WebSocket;
  private lineCb: ((line: string) => void) | null = null;

  constructor(url: string) {
    this.ws = new WebSocket(url);
  }

  send(line: string): void {
    if (this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(line);
    }
  }

  close(): void {
    this.ws.close();
  }

  onOpen(cb: () => void): void {
    this.ws.addEventListener("open", cb);
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
    this.ws.addEventListener("message", (ev) => {
      if (typeof ev.data === "string") {
        this.lineCb?.(ev.data);
      }
    });
  }

  onClose(cb: () => void): void {
    this.ws.addEventListener("close", cb);
    this.ws.addEventListener("error", () => this.ws.close());
  }
}

export function stationWsUrl(host: string, httpPort: number): string {
  return `ws://${host}:${httpPort}/ws`;
}
