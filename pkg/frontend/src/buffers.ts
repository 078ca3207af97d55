/** Bounded rolling buffers for the streamed per-tick metrics. */

import { CRITERIA, MODES, MetricsEvent, ModeLabel } from "./protocol.js";

export const DEFAULT_CAPACITY = 2000;

export interface MetricsPoint {
  tick: number;
  shares: Record<ModeLabel, number>;
  satisfaction: Record<ModeLabel, number | null>;
  byHabit: number;
  habitContrary: number;
  biased: number;
  constrained: number;
}

/** Append-only ring of the last `capacity` ticks. Snapshots must arrive
 * with strictly increasing tick numbers; anything else is dropped. */
export class MetricsBuffer {
  readonly capacity: number;
  private points: MetricsPoint[] = [];

  constructor(capacity: number = DEFAULT_CAPACITY) {
    if (capacity < 1) throw new Error("capacity must be positive");
    this.capacity = capacity;
  }

  get length(): number {
    return this.points.length;
  }

  lastTick(): number | null {
    return this.points.length ? this.points[this.points.length - 1].tick : null;
  }

  append(event: MetricsEvent): boolean {
    const last = this.lastTick();
    if (last !== null && event.tick <= last) return false;
    const shares = {} as Record<ModeLabel, number>;
    const satisfaction = {} as Record<ModeLabel, number | null>;
    for (const m of MODES) {
      shares[m] = event.shares[m];
      satisfaction[m] = event.mean_satisfaction[m];
    }
    this.points.push({
      tick: event.tick,
      shares,
      satisfaction,
      byHabit: event.by_habit,
      habitContrary: event.habit_contrary,
      biased: event.biased,
      constrained: event.constrained,
    });
    if (this.points.length > this.capacity) {
      this.points.splice(0, this.points.length - this.capacity);
    }
    return true;
  }

  clear(): void {
    this.points = [];
  }

  ticks(): number[] {
    return this.points.map((p) => p.tick);
  }

  shareSeries(mode: ModeLabel): number[] {
    return this.points.map((p) => p.shares[mode]);
  }

  satisfactionSeries(mode: ModeLabel): (number | null)[] {
    return this.points.map((p) => p.satisfaction[mode]);
  }

  counterSeries(name: "byHabit" | "habitContrary" | "biased" | "constrained"): number[] {
    return this.points.map((p) => p[name]);
  }

  maxCounter(): number {
    let max = 1;
    for (const p of this.points) {
      max = Math.max(max, p.byHabit, p.habitContrary, p.biased, p.constrained);
    }
    return max;
  }
}

/** Number of bins the server uses for histogram views. */
export const HISTOGRAM_BINS = 10;

export function histogramTotal(bins: number[]): number {
  return bins.reduce((a, b) => a + b, 0);
}

export { CRITERIA };
