// Keyboard bindings: arrows steer, space stops, L toggles the IR searchlight.

import type { CommandName } from "./protocol";

const BINDINGS: Record<string, CommandName> = {
  ArrowUp: "forward",
  ArrowDown: "backward",
  ArrowLeft: "left",
  ArrowRight: "right",
  " ": "stop",
};

/**
 * Resolve a keypress to a command. The searchlight key is a toggle, so the
 * caller passes the light state from the latest telemetry.
 */
export function commandForKey(
  key: string,
  searchlightOn: boolean,
): CommandName | null {
  if (key === "l" || key === "L") {
    return searchlightOn ? "light_off" : "light_on";
  }
  return BINDINGS[key] ?? null;
}

/** Per-key rate limiter: one command per key per >= minIntervalMs. */
export class KeyThrottle {
  private lastSent = new Map<string, number>();

  constructor(private minIntervalMs = 100) {}

  allow(key: string, nowMs: number): boolean {
    const last = this.lastSent.get(key);
    if (last !== undefined && nowMs - last < this.minIntervalMs) {
      return false;
    }
    this.lastSent.set(key, nowMs);
    return true;
  }
}
