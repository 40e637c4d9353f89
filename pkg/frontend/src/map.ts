/** Top-down field map: stations, the vehicle, and its recent track. */

import type { ScenarioNode } from "./client.js";
import type { TelemetrySample } from "./telemetry.js";

export class FieldMap {
  private readonly ctx: CanvasRenderingContext2D;
  private nodes: ScenarioNode[] = [];

  constructor(private readonly canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext("2d");
    if (ctx === null) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
  }

  setNodes(nodes: ScenarioNode[]): void {
    this.nodes = nodes;
  }

  render(track: TelemetrySample[], latest: TelemetrySample | null): void {
    const { width, height } = this.canvas;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#0c1117";
    ctx.fillRect(0, 0, width, height);

    const xs = this.nodes.map((n) => n.pose.x).concat(track.map((s) => s.xM));
    const ys = this.nodes.map((n) => n.pose.y).concat(track.map((s) => s.yM));
    if (xs.length === 0) return;
    const margin = 120;
    const loX = Math.min(...xs) - margin;
    const hiX = Math.max(...xs) + margin;
    const loY = Math.min(...ys) - margin;
    const hiY = Math.max(...ys) + margin;
    const span = Math.max(hiX - loX, hiY - loY);
    const cx = (loX + hiX) / 2;
    const cy = (loY + hiY) / 2;
    const scale = Math.min(width, height) / span;
    const px = (x: number) => width / 2 + (x - cx) * scale;
    const py = (y: number) => height / 2 - (y - cy) * scale; // +y is north/up

    // 200 m grid for a sense of scale
    ctx.strokeStyle = "#1b2330";
    ctx.lineWidth = 1;
    const step = 200;
    for (let gx = Math.floor(loX / step) * step; gx <= hiX; gx += step) {
      ctx.beginPath();
      ctx.moveTo(px(gx), 0);
      ctx.lineTo(px(gx), height);
      ctx.stroke();
    }
    for (let gy = Math.floor(loY / step) * step; gy <= hiY; gy += step) {
      ctx.beginPath();
      ctx.moveTo(0, py(gy));
      ctx.lineTo(width, py(gy));
      ctx.stroke();
    }

    if (track.length > 1) {
      ctx.strokeStyle = "#3b82f6";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      track.forEach((s, i) => {
        if (i === 0) ctx.moveTo(px(s.xM), py(s.yM));
        else ctx.lineTo(px(s.xM), py(s.yM));
      });
      ctx.stroke();
    }

    ctx.font = "11px monospace";
    for (const node of this.nodes) {
      const isCell = node.role === "BS" || node.role === "RELAY";
      if (!isCell) continue;
      const serving = latest !== null && latest.servingCell === node.id;
      ctx.fillStyle = serving ? "#22c55e" : "#94a3b8";
      ctx.fillRect(px(node.pose.x) - 5, py(node.pose.y) - 5, 10, 10);
      ctx.fillText(node.id, px(node.pose.x) + 8, py(node.pose.y) - 6);
    }

    if (latest !== null) {
      ctx.fillStyle = "#f59e0b";
      ctx.beginPath();
      ctx.arc(px(latest.xM), py(latest.yM), 6, 0, Math.PI * 2);
      ctx.fill();
      ctx.fillText(
        `${latest.nodeId}  alt ${latest.zM.toFixed(1)} m`,
        px(latest.xM) + 10,
        py(latest.yM) + 4,
      );
    }
  }
}
