// Pure geometry: journeys to per-leg polylines, plus the viewport math
// that maps lat/lng (degrees) onto the SVG canvas.  The projection is a
// plain equirectangular one, scaled by the cosine of the viewport's mid
// latitude so shapes keep their aspect ratio.

import type { Journey, Leg, Mode } from "./api.js";

export const MODE_COLORS: Record<Mode, string> = {
  foot: "#2e7d32",
  bike: "#f9a825",
  tram: "#c62828",
  car: "#1565c0",
};

export interface PolylineSpec {
  mode: Mode;
  color: string;
  points: [number, number][]; // [lat, lng]
  name?: string;
}

export function journeyPolylines(journey: Journey): PolylineSpec[] {
  return journey.legs
    .filter((leg: Leg) => leg.coordinates.length > 0)
    .map((leg: Leg) => ({
      mode: leg.mode,
      color: MODE_COLORS[leg.mode],
      points: leg.coordinates,
      name: leg.name,
    }));
}

export interface Viewport {
  centerLat: number;
  centerLng: number;
  /** degrees of latitude spanned vertically */
  spanLat: number;
  width: number;
  height: number;
}

export function fitViewport(
  points: [number, number][],
  width: number,
  height: number,
  paddingFactor = 1.3,
): Viewport {
  if (points.length === 0) {
    return { centerLat: 48.0, centerLng: 7.85, spanLat: 0.05, width, height };
  }
  const lats = points.map((p) => p[0]);
  const lngs = points.map((p) => p[1]);
  const centerLat = (Math.min(...lats) + Math.max(...lats)) / 2;
  const centerLng = (Math.min(...lngs) + Math.max(...lngs)) / 2;
  const latSpan = Math.max(...lats) - Math.min(...lats);
  const stretch = Math.cos((centerLat * Math.PI) / 180);
  const lngSpanAsLat = (Math.max(...lngs) - Math.min(...lngs)) * stretch;
  const spanLat = Math.max(
    (Math.max(latSpan, (lngSpanAsLat * height) / width) || 0.01) * paddingFactor,
    1e-4,
  );
  return { centerLat, centerLng, spanLat, width, height };
}

/** lat/lng in degrees to [x, y] pixels; y grows downward. */
export function project(v: Viewport, lat: number, lng: number): [number, number] {
  const stretch = Math.cos((v.centerLat * Math.PI) / 180);
  const degPerPx = v.spanLat / v.height;
  const x = v.width / 2 + ((lng - v.centerLng) * stretch) / degPerPx;
  const y = v.height / 2 - (lat - v.centerLat) / degPerPx;
  return [x, y];
}

/** [x, y] pixels back to [lat, lng] degrees. */
export function unproject(v: Viewport, x: number, y: number): [number, number] {
  const stretch = Math.cos((v.centerLat * Math.PI) / 180);
  const degPerPx = v.spanLat / v.height;
  const lat = v.centerLat + (v.height / 2 - y) * degPerPx;
  const lng = v.centerLng + ((x - v.width / 2) * degPerPx) / stretch;
  return [lat, lng];
}

export function toSvgPath(v: Viewport, spec: PolylineSpec): string {
  return spec.points
    .map((p, i) => {
      const [x, y] = project(v, p[0], p[1]);
      return `${i === 0 ? "M" : "L"}${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

export function zoom(v: Viewport, factor: number): Viewport {
  return { ...v, spanLat: Math.min(Math.max(v.spanLat * factor, 1e-5), 60) };
}

export function pan(v: Viewport, dxPx: number, dyPx: number): Viewport {
  const stretch = Math.cos((v.centerLat * Math.PI) / 180);
  const degPerPx = v.spanLat / v.height;
  return {
    ...v,
    centerLat: Math.min(Math.max(v.centerLat + dyPx * degPerPx, -85), 85),
    centerLng: v.centerLng - (dxPx * degPerPx) / stretch,
  };
}
