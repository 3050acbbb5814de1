// Types and request plumbing for the routing service.
//
// The request body carries exactly four fields: depTime, modes, from, to.
// Coordinates travel in degrees in both directions.

export interface Coordinate {
  lat: number;
  lng: number;
}

export type Mode = "car" | "bike" | "foot" | "tram";

export const ALL_MODES: Mode[] = ["car", "bike", "foot", "tram"];

export type Endpoint = number | string | Coordinate;

export interface RouteRequest {
  depTime: number | string;
  modes: Mode[];
  from: Endpoint;
  to: Endpoint;
}

export interface Leg {
  mode: Mode;
  coordinates: [number, number][]; // [lat, lng] pairs in degrees
  departure: number;
  arrival: number;
  name?: string;
}

export interface Journey {
  legs: Leg[];
  departure: number;
  arrival: number;
  totalCost: number;
}

export interface RouteResponse {
  journeys: Journey[];
}

export interface NearestResponse {
  id: number | string;
  lat: number;
  lng: number;
}

export interface PlanSelection {
  from: Endpoint;
  to: Endpoint;
  depTimeSeconds: number;
  modes: Record<Mode, boolean>;
}

/** Build the request payload; apart from the four fields nothing else is sent. */
export function buildRouteRequest(selection: PlanSelection): RouteRequest {
  const modes = ALL_MODES.filter((m) => selection.modes[m]);
  return {
    depTime: selection.depTimeSeconds,
    modes,
    from: selection.from,
    to: selection.to,
  };
}

export async function requestRoute(
  baseUrl: string,
  request: RouteRequest,
  signal?: AbortSignal,
): Promise<RouteResponse> {
  const response = await fetch(`${baseUrl}/route`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
    signal,
  });
  if (!response.ok) {
    throw new Error(`route request failed: HTTP ${response.status}`);
  }
  return (await response.json()) as RouteResponse;
}

export async function requestNearest(
  baseUrl: string,
  lat: number,
  lng: number,
): Promise<NearestResponse> {
  const params = new URLSearchParams({ lat: String(lat), lng: String(lng) });
  const response = await fetch(`${baseUrl}/nearest?${params}`);
  if (!response.ok) {
    throw new Error(`nearest request failed: HTTP ${response.status}`);
  }
  return (await response.json()) as NearestResponse;
}
