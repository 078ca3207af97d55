/** Client-side mirror of the session: connection status, pending command
 * ids and the latest layout / view payloads. The server remains the single
 * source of truth — this state only reflects acked facts. */

import { MetricsBuffer } from "./buffers.js";
import {
  AgentView,
  CriterionLabel,
  HistogramView,
  LayoutView,
  ModeLabel,
  ServerEvent,
  ViewName,
} from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface UiState {
  status: ConnectionStatus;
  paused: boolean;
  speed: number;
  selectedMode: ModeLabel;
  selectedCriterion: CriterionLabel;
  mapView: ViewName;
  layout: LayoutView | null;
  agents: AgentView[] | null;
  histogram: HistogramView | null;
  metrics: MetricsBuffer;
  pending: Set<number>;
  lastError: string | null;
}

export function initialState(capacity?: number): UiState {
  return {
    status: "connecting",
    paused: true,
    speed: 10,
    selectedMode: "car",
    selectedCriterion: "ecology",
    mapView: "agents",
    layout: null,
    agents: null,
    histogram: null,
    metrics: new MetricsBuffer(capacity),
    pending: new Set(),
    lastError: null,
  };
}

/** Record a command as sent (awaiting its ack). */
export function trackCommand(state: UiState, id: number): void {
  state.pending.add(id);
}

/** Fold one server event into the state; returns true when something
 * visible changed and the panels should re-render. */
export function applyServerEvent(state: UiState, event: ServerEvent): boolean {
  switch (event.type) {
    case "tick_metrics":
      return state.metrics.append(event);
    case "ack":
      if (event.id !== null) state.pending.delete(event.id);
      return false;
    case "error":
      if (event.id !== null) state.pending.delete(event.id);
      state.lastError = event.message;
      return true;
    case "state_view":
      switch (event.view) {
        case "layout":
          state.layout = event.payload as LayoutView;
          return true;
        case "agents":
          state.agents = event.payload as AgentView[];
          return true;
        case "priorities_histogram":
        case "values_histogram":
          state.histogram = event.payload as HistogramView;
          return true;
        default:
          return false;
      }
  }
}

/** Current layout cell for the selected (mode, criterion), if known. */
export function selectedValue(state: UiState): number | null {
  if (!state.layout) return null;
  return state.layout[state.selectedMode][state.selectedCriterion];
}
