/** Message types and command builders for the steering-service protocol.
 *
 * Every user gesture maps to exactly one ClientCommand; the builders here
 * are the only place commands are constructed.
 */
export const MODES = ["car", "bike", "bus", "walk"];
export const CRITERIA = ["ecology", "comfort", "price", "practicality", "time", "safety"];
export const MODE_COLORS = {
    car: "#d62728",
    bike: "#2ca02c",
    bus: "#1f77b4",
    walk: "#ff7f0e",
};
let nextId = 1;
/** Monotonic command ids so acks can be matched to their command. */
export function freshId() {
    return nextId++;
}
/** Test hook: restart the id sequence. */
export function resetIds() {
    nextId = 1;
}
export const commands = {
    pause: () => ({ id: freshId(), type: "pause" }),
    resume: () => ({ id: freshId(), type: "resume" }),
    step: (n = 1) => ({ id: freshId(), type: "step", n }),
    setSpeed: (ticksPerSecond) => ({
        id: freshId(),
        type: "set_speed",
        ticks_per_second: ticksPerSecond,
    }),
    adjustValue: (mode, criterion, delta) => ({
        id: freshId(),
        type: "intervene",
        action: "adjust_value",
        mode,
        criterion,
        delta,
    }),
    setValue: (mode, criterion, value) => ({
        id: freshId(),
        type: "intervene",
        action: "set_value",
        mode,
        criterion,
        value,
    }),
    shiftPriority: (criterion, delta) => ({
        id: freshId(),
        type: "intervene",
        action: "shift_priority",
        criterion,
        delta,
    }),
    toggle: (target, value) => ({
        id: freshId(),
        type: "intervene",
        action: "toggle",
        target,
        value,
    }),
    resetHabits: () => ({ id: freshId(), type: "reset_habits" }),
    snapshot: (view) => ({
        id: freshId(),
        type: "snapshot_request",
        view,
    }),
};
export function parseServerEvent(text) {
    let data;
    try {
        data = JSON.parse(text);
    }
    catch {
        return null;
    }
    if (typeof data !== "object" || data === null || typeof data.type !== "string") {
        return null;
    }
    return data;
}
