/** Keyboard/button steering: WASD for the horizontal plane, Q/E for climb.
 *
 * Screen convention: +x is east (D), +y is north (W). The horizontal
 * component is normalized so a diagonal hold still commands `speed *
 * throttle`; the vertical component is commanded independently against
 * the climb rate. The airframe clamps whatever we send, so over-commanding
 * is safe; the echo/actual split in the UI shows the difference.
 */

import type { Velocity } from "./state.js";

export interface SteeringInput {
  north: boolean;
  south: boolean;
  east: boolean;
  west: boolean;
  up: boolean;
  down: boolean;
}

export const IDLE_INPUT: SteeringInput = {
  north: false,
  south: false,
  east: false,
  west: false,
  up: false,
  down: false,
};

export function isIdle(input: SteeringInput): boolean {
  return !(input.north || input.south || input.east || input.west || input.up || input.down);
}

export function steeringVelocity(
  input: SteeringInput,
  throttle: number,
  speedMs: number,
  climbMs: number,
): Velocity {
  const clampedThrottle = Math.max(0, Math.min(1, throttle));
  let dx = (input.east ? 1 : 0) - (input.west ? 1 : 0);
  let dy = (input.north ? 1 : 0) - (input.south ? 1 : 0);
  const norm = Math.hypot(dx, dy);
  if (norm > 0) {
    dx /= norm;
    dy /= norm;
  }
  const dz = (input.up ? 1 : 0) - (input.down ? 1 : 0);
  return [
    dx * speedMs * clampedThrottle,
    dy * speedMs * clampedThrottle,
    dz * climbMs * clampedThrottle,
  ];
}

const KEY_MAP: Record<string, keyof SteeringInput> = {
  KeyW: "north",
  KeyS: "south",
  KeyD: "east",
  KeyA: "west",
  KeyQ: "up",
  KeyE: "down",
};

/** Tracks held keys; feed it keydown/keyup codes and read the current input. */
export class KeyTracker {
  private held: SteeringInput = { ...IDLE_INPUT };

  keyDown(code: string): boolean {
    const direction = KEY_MAP[code];
    if (direction === undefined) return false;
    this.held = { ...this.held, [direction]: true };
    return true;
  }

  keyUp(code: string): boolean {
    const direction = KEY_MAP[code];
    if (direction === undefined) return false;
    this.held = { ...this.held, [direction]: false };
    return true;
  }

  releaseAll(): void {
    this.held = { ...IDLE_INPUT };
  }

  current(): SteeringInput {
    return { ...this.held };
  }
}
