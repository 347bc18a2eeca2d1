// Operator-side state: latest-value telemetry mailbox, command history,
// connection status. The UI renders only what lives here.

import type { CommandName, StationConfig, Telemetry } from "./protocol";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export type ViewMode = "map" | "camera";

const HISTORY_LIMIT = 50;

export interface HistoryEntry {
  name: CommandName;
  seq: number | null; // filled in when the ack arrives
}

export class UiStore {
  status: ConnectionStatus = "disconnected";
  latest: Telemetry | null = null;
  config: StationConfig | null = null;
  history: HistoryEntry[] = [];
  view: ViewMode = "map";
  lastError: string | null = null;

  private listeners = new Set<() => void>();

  subscribe(fn: () => void): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  setStatus(status: ConnectionStatus): void {
    this.status = status;
    this.emit();
  }

  /** Keep only the newest frame; stale frames (older t) are discarded. */
  applyTelemetry(frame: Telemetry): boolean {
    if (this.latest !== null && frame.t <= this.latest.t) {
      return false;
    }
    this.latest = frame;
    this.emit();
    return true;
  }

  /** Reset the staleness horizon, e.g. when the station restarts. */
  clearTelemetry(): void {
    this.latest = null;
    this.emit();
  }

  applyConfig(config: StationConfig): void {
    this.config = config;
    this.emit();
  }

  recordCommand(name: CommandName): void {
    this.history.push({ name, seq: null });
    if (this.history.length > HISTORY_LIMIT) {
      this.history.shift();
    }
    this.emit();
  }

  recordAck(seq: number): void {
    const pending = this.history.find((h) => h.seq === null);
    if (pending) pending.seq = seq;
    this.emit();
  }

  recordError(error: string): void {
    this.lastError = error;
    this.emit();
  }

  setView(view: ViewMode): void {
    this.view = view;
    this.emit();
  }

  batteryCapacityAh(): number {
    const cap = this.config?.vehicle?.battery_capacity_ah;
    return typeof cap === "number" && cap > 0 ? cap : 7.0;
  }
}
