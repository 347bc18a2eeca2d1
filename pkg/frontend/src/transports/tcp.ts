// Node-only transport speaking the raw TCP wire (used by tests and any
// terminal tooling; the browser build never imports this module).

import net from "node:net";

import type { Transport } from "../client";
import { LineSplitter } from "../protocol";

export class TcpTransport implements Transport {
  private socket: net.Socket;
  private splitter = new LineSplitter();

  constructor(host: string, port: number) {
    this.socket = net.createConnection({ host, port });
    this.socket.setNoDelay(true);
  }

  send(line: string): void {
    this.socket.write(line + "\n");
  }

  close(): void {
    this.socket.destroy();
  }

  onOpen(cb: () => void): void {
    this.socket.on("connect", cb);
  }

  onLine(cb: (line: string) => void): void {
    this.socket.setEncoding("utf-8");
    this.socket.on("data", (chunk: string) => {
      for (const line of this.splitter.push(chunk)) {
        cb(line);
      }
    });
  }

  onClose(cb: () => void): void {
    this.socket.on("close", cb);
    this.socket.on("error", () => {
      /* close follows */
    });
  }
}
