// Station client: a transport-agnostic protocol driver. The browser plugs in
// a WebSocket transport, tests and terminal tools plug in raw TCP; both carry
// the same newline-delimited JSON messages.

import {
  commandLine,
  configRequestLine,
  parseServerMessage,
  type CommandName,
} from "./protocol";
import type { UiStore } from "./state";

export interface Transport {
  send(line: string): void;
  close(): void;
  onOpen(cb: () => void): void;
  onLine(cb: (line: string) => void): void;
  onClose(cb: () => void): void;
}

export type TransportFactory = () => Transport;

export interface ClientOptions {
  reconnect?: boolean;
  reconnectDelayMs?: number;
  maxReconnectDelayMs?: number;
}

export class StationClient {
  private transport: Transport | null = null;
  private closed = false;
  private delayMs: number;
  private readonly baseDelayMs: number;
  private readonly maxDelayMs: number;
  private readonly sent: CommandName[] = [];

  constructor(
    private makeTransport: TransportFactory,
    private store: UiStore,
    private options: ClientOptions = {},
  ) {
    this.baseDelayMs = options.reconnectDelayMs ?? 500;
    this.maxDelayMs = options.maxReconnectDelayMs ?? 8000;
    this.delayMs = this.baseDelayMs;
  }

  /** Outbound commands, in order; handy for tests and the history pane. */
  get sentCommands(): readonly CommandName[] {
    return this.sent;
  }

  connect(): void {
    if (this.closed) return;
    this.store.setStatus("connecting");
    const transport = this.makeTransport();
    this.transport = transport;
    transport.onOpen(() => {
      this.delayMs = this.baseDelayMs;
      this.store.setStatus("connected");
      transport.send(configRequestLine());
    });
    transport.onLine((line) => this.handleLine(line));
    transport.onClose(() => {
      this.transport = null;
      this.store.setStatus("disconnected");
      if (!this.closed && (this.options.reconnect ?? true)) {
        const delay = this.delayMs;
        this.delayMs = Math.min(this.delayMs * 2, this.maxDelayMs);
        setTimeout(() => this.connect(), delay);
      }
    });
  }

  private handleLine(line: string): void {
    const msg = parseServerMessage(line);
    if (msg === null) return;
    switch (msg.type) {
      case "telemetry":
        this.store.applyTelemetry(msg);
        break;
      case "ack":
        this.store.recordAck(msg.seq);
        break;
      case "config":
        this.store.applyConfig(msg);
        break;
      case "error":
        this.store.recordError(msg.error);
        break;
    }
  }

  sendCommand(name: CommandName): boolean {
    if (!this.transport || this.store.status !== "connected") {
      return false;
    }
    this.transport.send(commandLine(name));
    this.sent.push(name);
    this.store.recordCommand(name);
    return true;
  }

  close(): void {
    this.closed = true;
    this.transport?.close();
    this.transport = null;
    this.store.setStatus("disconnected");
  }
}
