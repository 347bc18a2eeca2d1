// Browser entry: wires the station client to canvases, keyboard, and gauges.

import { StationClient } from "./client";
import { commandForKey, KeyThrottle } from "./keymap";
import {
  buildCameraScene,
  buildMapScene,
  buildStatus,
  type CameraPrimitive,
  type MapPrimitive,
} from "./render";
import { UiStore, type ViewMode } from "./state";
import { stationWsUrl, WebSocketTransport } from "./transports/ws";

const store = new UiStore();
let client: StationClient | null = null;

const mapCanvas = document.getElementById("map") as HTMLCanvasElement;
const cameraCanvas = document.getElementById("camera") as HTMLCanvasElement;
const banner = document.getElementById("banner") as HTMLDivElement;
const led = document.getElementById("led") as HTMLSpanElement;
const lightState = document.getElementById("light-state") as HTMLSpanElement;
const batteryFill = document.getElementById("battery-fill") as HTMLElement;
const simClock = document.getElementById("sim-clock") as HTMLSpanElement;
const driveState = document.getElementById("drive-state") as HTMLSpanElement;
const historyList = document.getElementById("history") as HTMLUListElement;
const hostInput = document.getElementById("host") as HTMLInputElement;
const portInput = document.getElementById("port") as HTMLInputElement;
const connectBtn = document.getElementById("connect") as HTMLButtonElement;
const viewButtons = document.querySelectorAll<HTMLButtonElement>("[data-view]");

const throttle = new KeyThrottle(100);

function connect(): void {
  client?.close();
  store.clearTelemetry();
  const host = hostInput.value || "127.0.0.1";
  const port = Number(portInput.value) || 8000;
  client = new StationClient(
    () => new WebSocketTransport(stationWsUrl(host, port)),
    store,
  );
  client.connect();
}

connectBtn.addEventListener("click", connect);

viewButtons.forEach((btn) => {
  btn.addEventListener("click", () => {
    store.setView(btn.dataset.view as ViewMode);
    viewButtons.forEach((b) => b.classList.toggle("active", b === btn));
  });
});

window.addEventListener("keydown", (ev) => {
  const name = commandForKey(ev.key, store.latest?.searchlight ?? false);
  if (name === null) return;
  ev.preventDefault();
  if (!throttle.allow(ev.key, performance.now())) return;
  client?.sendCommand(name);
});

// -- painting ----------------------------------------------------------------

function paintMap(prims: MapPrimitive[]): void {
  const ctx = mapCanvas.getContext("2d")!;
  const { width, height } = mapCanvas;
  ctx.fillStyle = "#10141c";
  ctx.fillRect(0, 0, width, height);

  const world = store.config?.world;
  const w = world?.bounds.w ?? 10;
  const h = world?.bounds.h ?? 10;
  const scale = Math.min(width / w, height / h);
  const toX = (x: number) => x * scale;
  const toY = (y: number) => height - y * scale;

  ctx.strokeStyle = "#2c3648";
  ctx.strokeRect(0, height - h * scale, w * scale, h * scale);

  for (const p of prims) {
    if (p.kind === "obstacle") {
      ctx.beginPath();
      ctx.fillStyle = "#4a5468";
      ctx.arc(toX(p.x), toY(p.y), Math.max(p.r * scale, 2), 0, Math.PI * 2);
      ctx.fill();
    } else if (p.kind === "sighting") {
      const jx = (Math.random() - 0.5) * p.jitter * 40;
      const jy = (Math.random() - 0.5) * p.jitter * 40;
      ctx.beginPath();
      ctx.fillStyle = "#e8b339";
      ctx.arc(toX(p.x) + jx, toY(p.y) + jy, 3, 0, Math.PI * 2);
      ctx.fill();
    } else {
      ctx.save();
      ctx.translate(toX(p.x), toY(p.y));
      ctx.rotate(-p.theta);
      ctx.fillStyle = "#5fd068";
      ctx.beginPath();
      ctx.moveTo(10, 0);
      ctx.lineTo(-7, 6);
      ctx.lineTo(-7, -6);
      ctx.closePath();
      ctx.fill();
      ctx.restore();
    }
  }
}

function paintCamera(prims: CameraPrimitive[]): void {
  const ctx = cameraCanvas.getContext("2d")!;
  const { width, height } = cameraCanvas;
  ctx.fillStyle = "#05070c";
  ctx.fillRect(0, 0, width, height);

  for (const p of prims) {
    if (p.kind === "static") {
      const grains = Math.floor(p.intensity * 400);
      ctx.fillStyle = "rgba(200, 200, 210, 0.35)";
      for (let i = 0; i < grains; i++) {
        ctx.fillRect(Math.random() * width, Math.random() * height, 1.5, 1.5);
      }
    } else {
      // bearing maps to pane x (left positive), distance to size and height
      const fov = Math.PI / 6;
      const x = width / 2 - (p.bearing / fov) * (width / 2);
      const size = Math.max(60 / (1 + p.distance), 6);
      const jy = (Math.random() - 0.5) * p.jitter * 100;
      ctx.beginPath();
      ctx.fillStyle = "#b8c4d8";
      ctx.arc(x, height * 0.6 + jy, size, 0, Math.PI * 2);
      ctx.fill();
    }
  }
}

function paintStatus(): void {
  const status = buildStatus(store.latest, store.status, store.batteryCapacityAh());
  banner.textContent =
    status.connection === "connected"
      ? ""
      : status.connection === "connecting"
        ? "connecting to station..."
        : "station unreachable - retrying";
  banner.classList.toggle("hidden", status.connection === "connected");
  led.classList.toggle("lit", status.ledOn);
  lightState.textContent = status.searchlightOn ? "ON" : "off";
  batteryFill.style.width = `${(status.batteryFraction * 100).toFixed(1)}%`;
  simClock.textContent = status.simTime.toFixed(2);
  driveState.textContent = `${status.drive[0]}/${status.drive[1]}`;
}

function paintHistory(): void {
  historyList.replaceChildren(
    ...store.history
      .slice(-8)
      .reverse()
      .map((entry) => {
        const li = document.createElement("li");
        li.textContent = entry.seq === null
          ? `${entry.name} ...`
          : `#${entry.seq} ${entry.name}`;
        return li;
      }),
  );
}

function repaint(): void {
  if (store.view === "map") {
    mapCanvas.classList.remove("hidden");
    cameraCanvas.classList.add("hidden");
    paintMap(buildMapScene(store.latest, store.config?.world ?? null));
  } else {
    cameraCanvas.classList.remove("hidden");
    mapCanvas.classList.add("hidden");
    paintCamera(buildCameraScene(store.latest));
  }
  paintStatus();
  paintHistory();
}

let dirty = true;
store.subscribe(() => {
  dirty = true;
});

function frameLoop(): void {
  if (dirty) {
    dirty = false;
    repaint();
  }
  requestAnimationFrame(frameLoop);
}

repaint();
frameLoop();
connect();
