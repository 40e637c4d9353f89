/** Session against one control service: telemetry subscription plus commands.
 *
 * The client owns reconnection (exponential backoff, capped) and command
 * pacing (at most one velocity POST per 100 ms, latest command wins — the
 * simulation drains commands once per tick anyway). Transport is
 * injectable so the same client runs in a browser (native WebSocket /
 * fetch) and under Node in tests.
 */

import { ConsoleState, type Velocity } from "./state.js";
import { parseSampleRow } from "./telemetry.js";

export interface WebSocketLike {
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  close(): void;
}

export interface ConsoleClientOptions {
  baseUrl: string;
  state?: ConsoleState;
  webSocketFactory?: (url: string) => WebSocketLike;
  fetchFn?: typeof fetch;
  commandIntervalMs?: number;
  reconnectBaseMs?: number;
  reconnectMaxMs?: number;
}

export interface ServiceState {
  status: string;
  t_s: number;
  uavs: Record<string, { x: number; y: number; z: number; velocity: number[]; battery_pct: number }>;
  serving: Record<string, string>;
}

export interface ScenarioNode {
  id: string;
  role: string;
  mount: string;
  pose: { x: number; y: number; z: number };
}

export class ConsoleClient {
  readonly state: ConsoleState;
  private readonly baseUrl: string;
  private readonly wsUrl: string;
  private readonly makeSocket: (url: string) => WebSocketLike;
  private readonly fetchFn: typeof fetch;
  private readonly commandIntervalMs: number;
  private readonly reconnectBaseMs: number;
  private readonly reconnectMaxMs: number;

  private socket: WebSocketLike | null = null;
  private wantConnection = false;
  private reconnectAttempts = 0;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  private lastCommandSentMs = -Infinity;
  private pendingCommand: { nodeId: string; velocity: Velocity } | null = null;
  private commandTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(options: ConsoleClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/$/, "");
    this.wsUrl = this.baseUrl.replace(/^http/, "ws") + "/telemetry";
    this.state = options.state ?? new ConsoleState();
    const nativeSocket = (url: string) =>
      new (globalThis as { WebSocket: new (url: string) => WebSocketLike }).WebSocket(url);
    this.makeSocket = options.webSocketFactory ?? nativeSocket;
    this.fetchFn = options.fetchFn ?? globalThis.fetch.bind(globalThis);
    this.commandIntervalMs = options.commandIntervalMs ?? 100;
    this.reconnectBaseMs = options.reconnectBaseMs ?? 500;
    this.reconnectMaxMs = options.reconnectMaxMs ?? 5000;
  }

  /** Begin (and keep) a telemetry subscription; never throws on unreachable. */
  connect(): void {
    this.wantConnection = true;
    this.openSocket();
  }

  disconnect(): void {
    this.wantConnection = false;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    if (this.socket !== null) {
      const socket = this.socket;
      this.socket = null;
      socket.onclose = null;
      socket.close();
    }
    this.state.setConnection("disconnected");
  }

  get reconnectAttemptCount(): number {
    return this.reconnectAttempts;
  }

  private openSocket(): void {
    if (!this.wantConnection) return;
    this.state.setConnection("connecting");
    let socket: WebSocketLike;
    try {
      socket = this.makeSocket(this.wsUrl);
    } catch {
      this.scheduleReconnect();
      return;
    }
    this.socket = socket;
    socket.onopen = () => {
      this.reconnectAttempts = 0;
      this.state.setConnection("connected");
    };
    socket.onmessage = (ev) => {
      const data = ev.data;
      const text = typeof data === "string" ? data : String(data);
      try {
        this.state.ingest(parseSampleRow(text));
      } catch {
        // a malformed frame is the service's bug, not a reason to crash the console
      }
    };
    socket.onerror = () => {
      // close always follows; reconnect is handled there
    };
    socket.onclose = () => {
      if (this.socket === socket) this.socket = null;
      this.scheduleReconnect();
    };
  }

  private scheduleReconnect(): void {
    if (!this.wantConnection || this.reconnectTimer !== null) return;
    this.state.setConnection("disconnected");
    this.reconnectAttempts += 1;
    const delay = Math.min(
      this.reconnectBaseMs * 2 ** (this.reconnectAttempts - 1),
      this.reconnectMaxMs,
    );
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      this.openSocket();
    }, delay);
  }

  // -- control plane -------------------------------------------------------

  private async post(path: string, body?: unknown): Promise<Response> {
    const init: RequestInit = { method: "POST" };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    return this.fetchFn(this.baseUrl + path, init);
  }

  async start(): Promise<void> {
    const res = await this.post("/sim/start");
    if (!res.ok) throw new Error(`start failed: ${res.status}`);
  }

  async pause(): Promise<void> {
    const res = await this.post("/sim/pause");
    if (!res.ok) throw new Error(`pause failed: ${res.status}`);
  }

  async reset(): Promise<void> {
    const res = await this.post("/sim/reset");
    if (!res.ok) throw new Error(`reset failed: ${res.status}`);
    this.state.clearSamples();
  }

  async fetchState(): Promise<ServiceState> {
    const res = await this.fetchFn(this.baseUrl + "/state");
    if (!res.ok) throw new Error(`state failed: ${res.status}`);
    return (await res.json()) as ServiceState;
  }

  async fetchScenarioNodes(): Promise<ScenarioNode[]> {
    const res = await this.fetchFn(this.baseUrl + "/scenario");
    if (!res.ok) throw new Error(`scenario failed: ${res.status}`);
    const doc = (await res.json()) as { nodes?: ScenarioNode[] };
    return doc.nodes ?? [];
  }

  // -- steering ------------------------------------------------------------

  /** Queue a velocity command; paced to one POST per command interval. */
  steer(nodeId: string, velocity: Velocity): void {
    this.pendingCommand = { nodeId, velocity };
    const now = Date.now();
    const waitMs = this.lastCommandSentMs + this.commandIntervalMs - now;
    if (waitMs <= 0) {
      this.flushCommand();
    } else if (this.commandTimer === null) {
      this.commandTimer = setTimeout(() => {
        this.commandTimer = null;
        this.flushCommand();
      }, waitMs);
    }
  }

  private flushCommand(): void {
    const command = this.pendingCommand;
    if (command === null) return;
    this.pendingCommand = null;
    this.lastCommandSentMs = Date.now();
    const [vx, vy, vz] = command.velocity;
    this.state.recordCommand(command.nodeId, command.velocity, this.lastCommandSentMs);
    void this.post(`/uav/${command.nodeId}/velocity`, { vx, vy, vz }).then((res) => {
      if (!res.ok && this.state.lastCommand !== null) {
        // surface the rejection (e.g. paused simulation) instead of pretending
        this.state.lastCommand = null;
        this.state.notify();
      }
    }).catch(() => {
      this.state.lastCommand = null;
      this.state.notify();
    });
  }
}
