/** Message types and command builders for the steering-service protocol.
 *
 * Every user gesture maps to exactly one ClientCommand; the builders here
 * are the only place commands are constructed.
 */

export const MODES = ["car", "bike", "bus", "walk"] as const;
export const CRITERIA = ["ecology", "comfort", "price", "practicality", "time", "safety"] as const;

export type ModeLabel = (typeof MODES)[number];
export type CriterionLabel = (typeof CRITERIA)[number];

export const MODE_COLORS: Record<ModeLabel, string> = {
  car: "#d62728",
  bike: "#2ca02c",
  bus: "#1f77b4",
  walk: "#ff7f0e",
};

export type ViewName =
  | "metrics"
  | "agents"
  | "layout"
  | "priorities_histogram"
  | "values_histogram"
  | "replay_log";

export interface ClientCommand {
  id: number;
  type: string;
  [key: string]: unknown;
}

export interface MetricsEvent {
  type: "tick_metrics";
  tick: number;
  shares: Record<ModeLabel, number>;
  mean_satisfaction: Record<ModeLabel, number | null>;
  by_habit: number;
  habit_contrary: number;
  biased: number;
  constrained: number;
}

export interface AgentView {
  id: number;
  mode: ModeLabel;
  satisfaction: number;
  distance: number;
}

export type LayoutView = Record<ModeLabel, Record<CriterionLabel, number>>;
export type HistogramView = Record<ModeLabel, Record<CriterionLabel, number[]>>;

export interface StateViewEvent {
  type: "state_view";
  id: number | null;
  view: ViewName;
  payload: unknown;
}

export interface AckEvent {
  type: "ack";
  id: number | null;
}

export interface ErrorEvent {
  type: "error";
  id: number | null;
  message: string;
}

export type ServerEvent = MetricsEvent | StateViewEvent | AckEvent | ErrorEvent;

let nextId = 1;

/** Monotonic command ids so acks can be matched to their command. */
export function freshId(): number {
  return nextId++;
}

/** Test hook: restart the id sequence. */
export function resetIds(): void {
  nextId = 1;
}

export const commands = {
  pause: (): ClientCommand => ({ id: freshId(), type: "pause" }),
  resume: (): ClientCommand => ({ id: freshId(), type: "resume" }),
  step: (n = 1): ClientCommand => ({ id: freshId(), type: "step", n }),
  setSpeed: (ticksPerSecond: number): ClientCommand => ({
    id: freshId(),
    type: "set_speed",
    ticks_per_second: ticksPerSecond,
  }),
  adjustValue: (mode: ModeLabel, criterion: CriterionLabel, delta: number): ClientCommand => ({
    id: freshId(),
    type: "intervene",
    action: "adjust_value",
    mode,
    criterion,
    delta,
  }),
  setValue: (mode: ModeLabel, criterion: CriterionLabel, value: number): ClientCommand => ({
    id: freshId(),
    type: "intervene",
    action: "set_value",
    mode,
    criterion,
    value,
  }),
  shiftPriority: (criterion: CriterionLabel, delta: number): ClientCommand => ({
    id: freshId(),
    type: "intervene",
    action: "shift_priority",
    criterion,
    delta,
  }),
  toggle: (target: "biases" | "habits", value: boolean): ClientCommand => ({
    id: freshId(),
    type: "intervene",
    action: "toggle",
    target,
    value,
  }),
  resetHabits: (): ClientCommand => ({ id: freshId(), type: "reset_habits" }),
  snapshot: (view: ViewName): ClientCommand => ({
    id: freshId(),
    type: "snapshot_request",
    view,
  }),
};

export function parseServerEvent(text: string): ServerEvent | null {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null || typeof (data as any).type !== "string") {
    return null;
  }
  return data as ServerEvent;
}
