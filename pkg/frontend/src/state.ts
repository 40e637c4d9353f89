/** Console-side view of the simulation: strictly what the service reported.
 *
 * Every number shown in the UI is traceable either to a received telemetry
 * sample or to an echoed command; there is no client-side extrapolation of
 * link metrics. Per-node history is bounded and its time axis is kept
 * monotone at ingest (stale or duplicate frames are dropped, not reordered).
 */

import type { TelemetrySample } from "./telemetry.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export type Velocity = [number, number, number];

export interface CommandEcho {
  nodeId: string;
  velocity: Velocity;
  issuedAtMs: number;
  /** set once a telemetry sample arrives after the command was issued */
  acknowledged: boolean;
}

export const DEFAULT_HISTORY_LIMIT = 300;

export class ConsoleState {
  connection: ConnectionStatus = "disconnected";
  readonly historyLimit: number;
  readonly latest = new Map<string, TelemetrySample>();
  readonly history = new Map<string, TelemetrySample[]>();
  readonly recentEvents: { tS: number; event: string }[] = [];
  lastCommand: CommandEcho | null = null;

  private listeners: (() => void)[] = [];

  constructor(historyLimit: number = DEFAULT_HISTORY_LIMIT) {
    this.historyLimit = historyLimit;
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  notify(): void {
    for (const listener of this.listeners) listener();
  }

  setConnection(status: ConnectionStatus): void {
    if (this.connection !== status) {
      this.connection = status;
      this.notify();
    }
  }

  /** Ingest one sample; returns false when dropped for breaking monotone t. */
  ingest(sample: TelemetrySample): boolean {
    const rows = this.history.get(sample.nodeId) ?? [];
    const last = rows[rows.length - 1];
    if (last !== undefined && sample.tS <= last.tS) {
      return false;
    }
    rows.push(sample);
    if (rows.length > this.historyLimit) {
      rows.splice(0, rows.length - this.historyLimit);
    }
    this.history.set(sample.nodeId, rows);
    this.latest.set(sample.nodeId, sample);
    for (const event of sample.events) {
      this.recentEvents.push({ tS: sample.tS, event });
    }
    if (this.recentEvents.length > 20) {
      this.recentEvents.splice(0, this.recentEvents.length - 20);
    }
    if (this.lastCommand !== null && !this.lastCommand.acknowledged) {
      this.lastCommand = { ...this.lastCommand, acknowledged: true };
    }
    this.notify();
    return true;
  }

  recordCommand(nodeId: string, velocity: Velocity, issuedAtMs: number): void {
    this.lastCommand = { nodeId, velocity, issuedAtMs, acknowledged: false };
    this.notify();
  }

  /** Velocity measured from the last two samples of a node (their data, not ours). */
  measuredVelocity(nodeId: string): Velocity | null {
    const rows = this.history.get(nodeId);
    if (rows === undefined || rows.length < 2) return null;
    const a = rows[rows.length - 2]!;
    const b = rows[rows.length - 1]!;
    const dt = b.tS - a.tS;
    if (dt <= 0) return null;
    return [(b.xM - a.xM) / dt, (b.yM - a.yM) / dt, (b.zM - a.zM) / dt];
  }

  clearSamples(): void {
    this.latest.clear();
    this.history.clear();
    this.recentEvents.length = 0;
    this.notify();
  }
}
