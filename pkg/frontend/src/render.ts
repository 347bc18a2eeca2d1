// Scene builders: pure functions from telemetry to drawable primitives.
// main.ts paints these on canvases; tests assert on them directly.

import type { Telemetry, WorldConfig } from "./protocol";
import type { ConnectionStatus } from "./state";

export interface MapVehicle {
  kind: "vehicle";
  x: number;
  y: number;
  theta: number;
}

export interface MapObstacle {
  kind: "obstacle";
  x: number;
  y: number;
  r: number;
}

export interface MapSighting {
  kind: "sighting";
  x: number;
  y: number;
  jitter: number; // visual scatter radius driven by noise_sigma
}

export type MapPrimitive = MapVehicle | MapObstacle | MapSighting;

export interface CameraBlob {
  kind: "blob";
  bearing: number; // rad, 0 = straight ahead
  distance: number; // m
  jitter: number;
}

export interface CameraStatic {
  kind: "static";
  intensity: number; // 0..1 visual noise level
}

export type CameraPrimitive = CameraBlob | CameraStatic;

export interface StatusView {
  connection: ConnectionStatus;
  ledOn: boolean;
  searchlightOn: boolean;
  batteryFraction: number; // 0..1
  drive: [string, string];
  simTime: number;
}

/** Top-down view: world obstacles, the vehicle, and its camera sightings
 * projected into the world frame with jitter from the interference level. */
export function buildMapScene(
  frame: Telemetry | null,
  world: WorldConfig | null,
): MapPrimitive[] {
  const prims: MapPrimitive[] = [];
  if (world) {
    for (const ob of world.obstacles) {
      prims.push({ kind: "obstacle", x: ob.x, y: ob.y, r: ob.r });
    }
  }
  if (frame) {
    const { x, y, theta } = frame.pose;
    for (const s of frame.camera) {
      prims.push({
        kind: "sighting",
        x: x + s.distance * Math.cos(theta + s.bearing),
        y: y + s.distance * Math.sin(theta + s.bearing),
        jitter: frame.noise_sigma,
      });
    }
    prims.push({ kind: "vehicle", x, y, theta });
  }
  return prims;
}

/** First-person camera pane: one blob per sighting. With nothing in view the
 * pane carries only static, so a dark scene reads as noise until the
 * searchlight comes on. */
export function buildCameraScene(frame: Telemetry | null): CameraPrimitive[] {
  if (!frame) {
    return [{ kind: "static", intensity: 1 }];
  }
  const prims: CameraPrimitive[] = frame.camera.map((s) => ({
    kind: "blob",
    bearing: s.bearing,
    distance: s.distance,
    jitter: frame.noise_sigma,
  }));
  // baseline static grows with motor interference
  prims.push({
    kind: "static",
    intensity: Math.min(1, 0.05 + frame.noise_sigma * 4),
  });
  return prims;
}

export function buildStatus(
  frame: Telemetry | null,
  connection: ConnectionStatus,
  batteryCapacityAh: number,
): StatusView {
  if (!frame) {
    return {
      connection,
      ledOn: false,
      searchlightOn: false,
      batteryFraction: 0,
      drive: ["off", "off"],
      simTime: 0,
    };
  }
  return {
    connection,
    ledOn: frame.obstacle_led,
    searchlightOn: frame.searchlight,
    batteryFraction: Math.max(0, Math.min(1, frame.battery_ah / batteryCapacityAh)),
    drive: frame.drive,
    simTime: frame.t,
  };
}

export function hasSightings(prims: CameraPrimitive[]): boolean {
  return prims.some((p) => p.kind === "blob");
}
