// Station wire protocol: newline-delimited JSON messages, one object per line.
// Unknown message types and unknown fields are ignored.

export type CommandName =
  | "forward"
  | "backward"
  | "left"
  | "right"
  | "stop"
  | "light_on"
  | "light_off";

export interface Pose {
  x: number;
  y: number;
  theta: number;
}

export interface Sighting {
  bearing: number;
  distance: number;
}

export interface Telemetry {
  type: "telemetry";
  t: number;
  pose: Pose;
  relay_mask: number;
  drive: [string, string];
  battery_ah: number;
  obstacle_led: boolean;
  searchlight: boolean;
  camera: Sighting[];
  noise_sigma: number;
}

export interface Ack {
  type: "ack";
  seq: number;
}

export interface WorldConfig {
  bounds: { w: number; h: number };
  obstacles: { x: number; y: number; r: number }[];
  ambient_light: number;
  start_pose: Pose;
}

export interface StationConfig {
  type: "config";
  tick: number;
  world: WorldConfig;
  vehicle: Record<string, number>;
  [extra: string]: unknown;
}

export interface WireError {
  type: "error";
  error: string;
}

export type ServerMessage = Telemetry | Ack | StationConfig | WireError;

function isNum(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

function isPose(v: unknown): v is Pose {
  const p = v as Pose;
  return !!p && isNum(p.x) && isNum(p.y) && isNum(p.theta);
}

/** Parse one wire line; returns null for unknown or malformed messages. */
export function parseServerMessage(line: string): ServerMessage | null {
  let msg: unknown;
  try {
    msg = JSON.parse(line);
  } catch {
    return null;
  }
  if (typeof msg !== "object" || msg === null) return null;
  const m = msg as Record<string, unknown>;
  switch (m.type) {
    case "telemetry": {
      if (!isNum(m.t) || !isPose(m.pose) || !isNum(m.battery_ah)) return null;
      const camera = Array.isArray(m.camera)
        ? (m.camera as Sighting[]).filter(
            (s) => isNum(s?.bearing) && isNum(s?.distance),
          )
        : [];
      return {
        type: "telemetry",
        t: m.t,
        pose: m.pose,
        relay_mask: isNum(m.relay_mask) ? m.relay_mask : 0,
        drive: Array.isArray(m.drive)
          ? (m.drive as [string, string])
          : ["off", "off"],
        battery_ah: m.battery_ah,
        obstacle_led: Boolean(m.obstacle_led),
        searchlight: Boolean(m.searchlight),
        camera,
        noise_sigma: isNum(m.noise_sigma) ? m.noise_sigma : 0,
      };
    }
    case "ack":
      return isNum(m.seq) ? { type: "ack", seq: m.seq } : null;
    case "config":
      return m as unknown as StationConfig;
    case "error":
      return typeof m.error === "string"
        ? { type: "error", error: m.error }
        : null;
    default:
      return null;
  }
}

/** Encode one outbound command as a wire line (without the newline). */
export function commandLine(name: CommandName): string {
  return JSON.stringify({ type: "command", name });
}

export function configRequestLine(): string {
  return JSON.stringify({ type: "config_get" });
}

/** Reassembles newline-delimited frames from arbitrary stream chunks. */
export class LineSplitter {
  private buffer = "";

  push(chunk: string): string[] {
    this.buffer += chunk;
    const parts = this.buffer.split("\n");
    this.buffer = parts.pop() ?? "";
    return parts.filter((p) => p.trim().length > 0);
  }
}
