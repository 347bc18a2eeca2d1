import { describe, expect, it } from "vitest";

import type { Telemetry, WorldConfig } from "../src/protocol";
import {
  buildCameraScene,
  buildMapScene,
  buildStatus,
  hasSightings,
} from "../src/render";

function frame(overrides: Partial<Telemetry> = {}): Telemetry {
  return {
    type: "telemetry",
    t: 3.0,
    pose: { x: 5, y: 5, theta: 0 },
    relay_mask: 0,
    drive: ["off", "off"],
    battery_ah: 3.5,
    obstacle_led: false,
    searchlight: false,
    camera: [],
    noise_sigma: 0,
    ...overrides,
  };
}

const WORLD: WorldConfig = {
  bounds: { w: 10, h: 10 },
  obstacles: [{ x: 7, y: 5, r: 0.5 }],
  ambient_light: 0,
  start_pose: { x: 5, y: 5, theta: 0 },
};

describe("buildMapScene", () => {
  it("draws vehicle, obstacles, and world-frame sightings", () => {
    const prims = buildMapScene(
      frame({ camera: [{ bearing: 0, distance: 2 }], noise_sigma: 0.05 }),
      WORLD,
    );
    const vehicle = prims.find((p) => p.kind === "vehicle");
    const obstacle = prims.find((p) => p.kind === "obstacle");
    const sighting = prims.find((p) => p.kind === "sighting");
    expect(vehicle).toMatchObject({ x: 5, y: 5 });
    expect(obstacle).toMatchObject({ x: 7, r: 0.5 });
    expect(sighting).toMatchObject({ x: 7, y: 5, jitter: 0.05 });
  });

  it("handles missing telemetry and config", () => {
    expect(buildMapScene(null, null)).toEqual([]);
  });
});

describe("buildCameraScene", () => {
  it("night with searchlight off: static only, no sightings", () => {
    const prims = buildCameraScene(frame({ camera: [] }));
    expect(hasSightings(prims)).toBe(false);
    expect(prims.some((p) => p.kind === "static")).toBe(true);
  });

  it("sightings render as range/bearing blobs with jitter", () => {
    const prims = buildCameraScene(
      frame({
        camera: [{ bearing: -0.2, distance: 1.5 }],
        noise_sigma: 0.0875,
      }),
    );
    expect(hasSightings(prims)).toBe(true);
    const blob = prims.find((p) => p.kind === "blob");
    expect(blob).toMatchObject({ bearing: -0.2, distance: 1.5, jitter: 0.0875 });
  });

  it("static intensity grows with interference", () => {
    const calm = buildCameraScene(frame({ noise_sigma: 0 }));
    const rough = buildCameraScene(frame({ noise_sigma: 0.0875 }));
    const calmStatic = calm.find((p) => p.kind === "static")!;
    const roughStatic = rough.find((p) => p.kind === "static")!;
    expect(roughStatic.intensity).toBeGreaterThan(calmStatic.intensity);
  });
});

describe("buildStatus", () => {
  it("mirrors LED, searchlight, and the battery fraction", () => {
    const status = buildStatus(
      frame({ obstacle_led: true, searchlight: true, battery_ah: 3.5 }),
      "connected",
      7.0,
    );
    expect(status.ledOn).toBe(true);
    expect(status.searchlightOn).toBe(true);
    expect(status.batteryFraction).toBeCloseTo(0.5);
  });

  it("renders an inert panel with no telemetry", () => {
    const status = buildStatus(null, "disconnected", 7.0);
    expect(status.ledOn).toBe(false);
    expect(status.batteryFraction).toBe(0);
    expect(status.connection).toBe("disconnected");
  });
});
