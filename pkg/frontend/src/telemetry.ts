/** Telemetry wire format: one CSV row per WebSocket text frame. */

export interface TelemetrySample {
  tS: number;
  nodeId: string;
  xM: number;
  yM: number;
  zM: number;
  servingCell: string;
  rsrpDbm: number;
  snrDb: number;
  sinrDb: number;
  dlMbps: number;
  ulMbps: number;
  batteryPct: number;
  events: string[];
}

export const TELEMETRY_FIELDS = 13;

/** Parse one telemetry row; throws on a malformed frame. */
export function parseSampleRow(row: string): TelemetrySample {
  const parts = row.trim().split(",");
  if (parts.length !== TELEMETRY_FIELDS) {
    throw new Error(`telemetry row has ${parts.length} fields, expected ${TELEMETRY_FIELDS}`);
  }
  const num = (index: number, label: string): number => {
    const value = Number(parts[index]);
    if (!Number.isFinite(value)) {
      throw new Error(`telemetry field ${label} is not a number: ${parts[index]}`);
    }
    return value;
  };
  return {
    tS: num(0, "t_s"),
    nodeId: parts[1]!,
    xM: num(2, "x_m"),
    yM: num(3, "y_m"),
    zM: num(4, "z_m"),
    servingCell: parts[5]!,
    rsrpDbm: num(6, "rsrp_dbm"),
    snrDb: num(7, "snr_db"),
    sinrDb: num(8, "sinr_db"),
    dlMbps: num(9, "dl_mbps"),
    ulMbps: num(10, "ul_mbps"),
    batteryPct: num(11, "battery_pct"),
    events: parts[12] ? parts[12]!.split(";") : [],
  };
}
