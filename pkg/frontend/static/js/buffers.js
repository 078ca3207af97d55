/** Bounded rolling buffers for the streamed per-tick metrics. */
import { CRITERIA, MODES } from "./protocol.js";
export const DEFAULT_CAPACITY = 2000;
/** Append-only ring of the last `capacity` ticks. Snapshots must arrive
 * with strictly increasing tick numbers; anything else is dropped. */
export class MetricsBuffer {
    constructor(capacity = DEFAULT_CAPACITY) {
        this.points = [];
        if (capacity < 1)
            throw new Error("capacity must be positive");
        this.capacity = capacity;
    }
    get length() {
        return this.points.length;
    }
    lastTick() {
        return this.points.length ? this.points[this.points.length - 1].tick : null;
    }
    append(event) {
        const last = this.lastTick();
        if (last !== null && event.tick <= last)
            return false;
        const shares = {};
        const satisfaction = {};
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
    clear() {
        this.points = [];
    }
    ticks() {
        return this.points.map((p) => p.tick);
    }
    shareSeries(mode) {
        return this.points.map((p) => p.shares[mode]);
    }
    satisfactionSeries(mode) {
        return this.points.map((p) => p.satisfaction[mode]);
    }
    counterSeries(name) {
        return this.points.map((p) => p[name]);
    }
    maxCounter() {
        let max = 1;
        for (const p of this.points) {
            max = Math.max(max, p.byHabit, p.habitContrary, p.biased, p.constrained);
        }
        return max;
    }
}
/** Number of bins the server uses for histogram views. */
export const HISTOGRAM_BINS = 10;
export function histogramTotal(bins) {
    return bins.reduce((a, b) => a + b, 0);
}
export { CRITERIA };
