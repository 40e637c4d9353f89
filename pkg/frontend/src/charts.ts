/** Minimal canvas strip chart: bounded history, auto-scaled y, monotone t. */

export interface Series {
  label: string;
  color: string;
}

export class LineChart {
  private readonly ctx: CanvasRenderingContext2D;
  private readonly series: Series[];
  private readonly limit: number;
  private readonly unit: string;
  private times: number[] = [];
  private values: number[][];

  constructor(
    private readonly canvas: HTMLCanvasElement,
    series: Series[],
    options: { limit?: number; unit?: string } = {},
  ) {
    const ctx = canvas.getContext("2d");
    if (ctx === null) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
    this.series = series;
    this.limit = options.limit ?? 300;
    this.unit = options.unit ?? "";
    this.values = series.map(() => []);
  }

  push(tS: number, row: number[]): void {
    const last = this.times[this.times.length - 1];
    if (last !== undefined && tS <= last) return;
    this.times.push(tS);
    row.forEach((v, i) => this.values[i]!.push(v));
    if (this.times.length > this.limit) {
      const excess = this.times.length - this.limit;
      this.times.splice(0, excess);
      for (const column of this.values) column.splice(0, excess);
    }
  }

  clear(): void {
    this.times = [];
    this.values = this.series.map(() => []);
    this.render();
  }

  render(): void {
    const { width, height } = this.canvas;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#10151c";
    ctx.fillRect(0, 0, width, height);
    if (this.times.length < 2) return;

    let lo = Infinity;
    let hi = -Infinity;
    for (const column of this.values) {
      for (const v of column) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    if (!(hi > lo)) {
      lo -= 1;
      hi += 1;
    }
    const pad = (hi - lo) * 0.1;
    lo -= pad;
    hi += pad;

    const t0 = this.times[0]!;
    const t1 = this.times[this.times.length - 1]!;
    const x = (t: number) => ((t - t0) / Math.max(t1 - t0, 1e-9)) * (width - 8) + 4;
    const y = (v: number) => height - 16 - ((v - lo) / (hi - lo)) * (height - 24);

    ctx.strokeStyle = "#2a3442";
    ctx.beginPath();
    ctx.moveTo(0, y(lo + pad));
    ctx.lineTo(width, y(lo + pad));
    ctx.stroke();

    this.series.forEach((series, i) => {
      const column = this.values[i]!;
      ctx.strokeStyle = series.color;
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      this.times.forEach((t, k) => {
        const px = x(t);
        const py = y(column[k]!);
        if (k === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
    });

    ctx.font = "10px monospace";
    ctx.fillStyle = "#8b98a9";
    ctx.fillText(`${hi.toFixed(1)} ${this.unit}`, 4, 10);
    ctx.fillText(`${lo.toFixed(1)} ${this.unit}`, 4, height - 4);
    let legendX = 70;
    this.series.forEach((series, i) => {
      ctx.fillStyle = series.color;
      const latest = this.values[i]!;
      const value = latest.length > 0 ? latest[latest.length - 1]!.toFixed(1) : "-";
      ctx.fillText(`${series.label} ${value}`, legendX, 10);
      legendX += ctx.measureText(`${series.label} ${value}`).width + 14;
    });
  }
}
