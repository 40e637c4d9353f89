/** DOM wiring for the operator console; all numbers come from the service. */

import { LineChart } from "./charts.js";
import { ConsoleClient } from "./client.js";
import { FieldMap } from "./map.js";
import { ConsoleState } from "./state.js";
import { isIdle, KeyTracker, steeringVelocity } from "./steering.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

const DEFAULT_URL = `http://${location.hostname || "127.0.0.1"}:8464`;

let client: ConsoleClient | null = null;
let vehicleId: string | null = null;
let maxSpeed = 10;
let maxClimb = 3;
let wasSteering = false;

const state = new ConsoleState();
const keys = new KeyTracker();
const fieldMap = new FieldMap($<HTMLCanvasElement>("map"));
const signalChart = new LineChart(
  $<HTMLCanvasElement>("signal-chart"),
  [
    { label: "RSRP", color: "#f59e0b" },
    { label: "SNR", color: "#38bdf8" },
    { label: "SINR", color: "#a78bfa" },
  ],
  { unit: "dB(m)" },
);
const rateChart = new LineChart(
  $<HTMLCanvasElement>("rate-chart"),
  [
    { label: "DL", color: "#22c55e" },
    { label: "UL", color: "#f472b6" },
  ],
  { unit: "Mbps" },
);

function fmtVelocity(v: readonly number[] | null): string {
  if (v === null) return "-";
  return `(${v[0]!.toFixed(1)}, ${v[1]!.toFixed(1)}, ${v[2]!.toFixed(1)}) m/s`;
}

function render(): void {
  const badge = $("connection");
  badge.textContent = state.connection;
  badge.className = `badge ${state.connection}`;

  const sample = vehicleId !== null ? state.latest.get(vehicleId) ?? null : null;
  const track = vehicleId !== null ? state.history.get(vehicleId) ?? [] : [];
  fieldMap.render(track, sample);
  if (sample !== undefined && sample !== null) {
    $("altitude").textContent = `${sample.zM.toFixed(1)} m`;
    $("serving").textContent = sample.servingCell;
    $("t-now").textContent = `${sample.tS.toFixed(1)} s`;
    const battery = $("battery-fill");
    battery.style.width = `${(sample.batteryPct * 100).toFixed(1)}%`;
    battery.className = sample.batteryPct < 0.2 ? "fill low" : "fill";
    $("battery-label").textContent = `${(sample.batteryPct * 100).toFixed(1)}%`;
  }
  const commanded = state.lastCommand;
  $("cmd-velocity").textContent =
    commanded === null
      ? "-"
      : `${fmtVelocity(commanded.velocity)}${commanded.acknowledged ? "" : " (pending)"}`;
  $("actual-velocity").textContent = fmtVelocity(
    vehicleId !== null ? state.measuredVelocity(vehicleId) : null,
  );
  const log = state.recentEvents
    .slice(-6)
    .map((e) => `t=${e.tS.toFixed(1)}s ${e.event}`)
    .join("\n");
  $("events").textContent = log.length > 0 ? log : "(none)";

  signalChart.render();
  rateChart.render();
}

state.onChange(() => {
  if (vehicleId !== null) {
    const sample = state.latest.get(vehicleId);
    const rows = state.history.get(vehicleId);
    if (sample !== undefined && rows !== undefined && rows[rows.length - 1] === sample) {
      signalChart.push(sample.tS, [sample.rsrpDbm, sample.snrDb, sample.sinrDb]);
      rateChart.push(sample.tS, [sample.dlMbps, sample.ulMbps]);
    }
  }
  render();
});

async function connect(): Promise<void> {
  client?.disconnect();
  const url = $<HTMLInputElement>("service-url").value.trim() || DEFAULT_URL;
  client = new ConsoleClient({ baseUrl: url, state });
  client.connect();
  try {
    const nodes = await client.fetchScenarioNodes();
    fieldMap.setNodes(nodes);
    const snapshot = await client.fetchState();
    const ids = Object.keys(snapshot.uavs);
    vehicleId = ids[0] ?? null;
    $("status-line").textContent =
      vehicleId === null ? "scenario has no flyable vehicle" : `steering ${vehicleId}`;
    const doc = await (await fetch(url + "/scenario")).json();
    const uavCfg = vehicleId !== null ? doc.uavs?.[vehicleId]?.state : undefined;
    if (uavCfg !== undefined) {
      maxSpeed = uavCfg.max_speed_ms ?? 10;
      maxClimb = uavCfg.max_climb_ms ?? 3;
    }
  } catch {
    $("status-line").textContent = "control endpoints unreachable";
  }
  render();
}

function bindControl(id: string, action: () => Promise<void>): void {
  $(id).addEventListener("click", () => {
    action().then(
      () => {
        $("status-line").textContent = `${id.replace("btn-", "")} ok`;
      },
      (err: unknown) => {
        $("status-line").textContent = String(err);
      },
    );
  });
}

function steerLoop(): void {
  if (client !== null && vehicleId !== null) {
    const input = keys.current();
    const idle = isIdle(input);
    if (!idle || wasSteering) {
      const throttle = Number($<HTMLInputElement>("throttle").value) / 100;
      client.steer(vehicleId, steeringVelocity(input, throttle, maxSpeed, maxClimb));
    }
    wasSteering = !idle;
  }
  window.setTimeout(steerLoop, 100); // one command per simulation tick
}

function bindHoldButton(id: string, code: string): void {
  const el = $(id);
  el.addEventListener("mousedown", () => keys.keyDown(code));
  el.addEventListener("mouseup", () => keys.keyUp(code));
  el.addEventListener("mouseleave", () => keys.keyUp(code));
  el.addEventListener("touchstart", (e) => {
    e.preventDefault();
    keys.keyDown(code);
  });
  el.addEventListener("touchend", () => keys.keyUp(code));
}

export function main(): void {
  $<HTMLInputElement>("service-url").value = DEFAULT_URL;
  $("btn-connect").addEventListener("click", () => void connect());
  bindControl("btn-start", () => client?.start() ?? Promise.reject("not connected"));
  bindControl("btn-pause", () => client?.pause() ?? Promise.reject("not connected"));
  bindControl("btn-reset", async () => {
    await (client?.reset() ?? Promise.reject("not connected"));
    signalChart.clear();
    rateChart.clear();
  });

  window.addEventListener("keydown", (e) => {
    if (keys.keyDown(e.code)) e.preventDefault();
  });
  window.addEventListener("keyup", (e) => {
    if (keys.keyUp(e.code)) e.preventDefault();
  });
  window.addEventListener("blur", () => keys.releaseAll());

  bindHoldButton("btn-north", "KeyW");
  bindHoldButton("btn-south", "KeyS");
  bindHoldButton("btn-east", "KeyD");
  bindHoldButton("btn-west", "KeyA");
  bindHoldButton("btn-up", "KeyQ");
  bindHoldButton("btn-down", "KeyE");

  steerLoop();
  render();
}

main();
