// UI state and its pure transitions: first click picks the source,
// second the destination, further clicks start over.

import type { Coordinate, Endpoint, Mode, PlanSelection } from "./api.js";

export interface UiState {
  from?: Coordinate & { id?: number | string };
  to?: Coordinate & { id?: number | string };
  depTimeSeconds: number;
  modes: Record<Mode, boolean>;
}

export function initialState(now: Date = new Date()): UiState {
  return {
    depTimeSeconds: secondsOfDay(now),
    modes: { car: true, bike: true, foot: true, tram: true },
  };
}

export function secondsOfDay(date: Date): number {
  return date.getHours() * 3600 + date.getMinutes() * 60 + date.getSeconds();
}

export function parseClockTime(text: string): number | undefined {
  const match = /^(\d{1,2}):(\d{2})(?::(\d{2}))?$/.exec(text.trim());
  if (!match) return undefined;
  const [h, m, s] = [Number(match[1]), Number(match[2]), Number(match[3] ?? "0")];
  if (m >= 60 || s >= 60) return undefined;
  return h * 3600 + m * 60 + s;
}

export function formatClockTime(seconds: number): string {
  const total = Math.round(seconds) % 86400;
  const h = Math.floor(total / 3600);
  const m = Math.floor((total % 3600) / 60);
  const s = total % 60;
  const pad = (n: number) => String(n).padStart(2, "0");
  return `${pad(h)}:${pad(m)}:${pad(s)}`;
}

export function placeMarker(
  state: UiState,
  node: { id: number | string; lat: number; lng: number },
): UiState {
  if (!state.from || (state.from && state.to)) {
    return { ...state, from: { id: node.id, lat: node.lat, lng: node.lng }, to: undefined };
  }
  return { ...state, to: { id: node.id, lat: node.lat, lng: node.lng } };
}

export function toggleMode(state: UiState, mode: Mode, enabled: boolean): UiState {
  return { ...state, modes: { ...state.modes, [mode]: enabled } };
}

export function readySelection(state: UiState): PlanSelection | undefined {
  if (!state.from || !state.to) return undefined;
  const endpoint = (m: Coordinate & { id?: number | string }): Endpoint =>
    m.id !== undefined ? m.id : { lat: m.lat, lng: m.lng };
  return {
    from: endpoint(state.from),
    to: endpoint(state.to),
    depTimeSeconds: state.depTimeSeconds,
    modes: state.modes,
  };
}
