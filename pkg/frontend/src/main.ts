// DOM wiring: an SVG canvas acting as the map, click-to-set markers
// resolved through /nearest, departure time and mode controls, and
// journey rendering.  At most one /route request is in flight; a new
// plan aborts the pending one.

import { buildRouteRequest, requestNearest, requestRoute } from "./api.js";
import type { Journey, Mode } from "./api.js";
import {
  formatClockTime,
  initialState,
  parseClockTime,
  placeMarker,
  readySelection,
  toggleMode,
} from "./state.js";
import type { UiState } from "./state.js";
import {
  fitViewport,
  journeyPolylines,
  pan,
  project,
  toSvgPath,
  unproject,
  zoom,
} from "./render.js";
import type { Viewport } from "./render.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  private state: UiState = initialState();
  private viewport: Viewport;
  private journeys: Journey[] = [];
  private inflight?: AbortController;
  private readonly svg = el<HTMLElement>("map") as unknown as SVGSVGElement;
  private readonly banner = el<HTMLDivElement>("banner");
  private readonly summary = el<HTMLDivElement>("summary");
  private readonly baseUrl = "";

  constructor() {
    const params = new URLSearchParams(window.location.search);
    this.viewport = {
      centerLat: Number(params.get("lat") ?? 48.0),
      centerLng: Number(params.get("lng") ?? 7.85),
      spanLat: Number(params.get("span") ?? 1.5),
      width: this.svg.clientWidth || 800,
      height: this.svg.clientHeight || 600,
    };
    this.wireControls();
    this.draw();
  }

  private wireControls(): void {
    const depTime = el<HTMLInputElement>("dep-time");
    depTime.value = formatClockTime(this.state.depTimeSeconds);
    depTime.addEventListener("change", () => {
      const parsed = parseClockTime(depTime.value);
      if (parsed === undefined) {
        this.showBanner("departure time must be HH:MM or HH:MM:SS");
        return;
      }
      this.state = { ...this.state, depTimeSeconds: parsed };
      this.hideBanner();
    });

    for (const mode of ["car", "bike", "foot", "tram"] as Mode[]) {
      const box = el<HTMLInputElement>(`mode-${mode}`);
      box.checked = this.state.modes[mode];
      box.addEventListener("change", () => {
        this.state = toggleMode(this.state, mode, box.checked);
      });
    }

    el<HTMLButtonElement>("plan").addEventListener("click", () => void this.plan());
    el<HTMLButtonElement>("clear").addEventListener("click", () => {
      this.state = { ...this.state, from: undefined, to: undefined };
      this.journeys = [];
      this.summary.textContent = "";
      this.hideBanner();
      this.draw();
    });

    this.svg.addEventListener("click", (event) => void this.onMapClick(event));
    this.svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      this.viewport = zoom(this.viewport, event.deltaY > 0 ? 1.25 : 0.8);
      this.draw();
    });
    let dragging: [number, number] | undefined;
    this.svg.addEventListener("mousedown", (e) => (dragging = [e.offsetX, e.offsetY]));
    this.svg.addEventListener("mousemove", (e) => {
      if (!dragging) return;
      this.viewport = pan(this.viewport, e.offsetX - dragging[0], e.offsetY - dragging[1]);
      dragging = [e.offsetX, e.offsetY];
      this.draw();
    });
    window.addEventListener("mouseup", () => (dragging = undefined));
  }

  private async onMapClick(event: MouseEvent): Promise<void> {
    const [lat, lng] = unproject(this.viewport, event.offsetX, event.offsetY);
    try {
      const node = await requestNearest(this.baseUrl, lat, lng);
      this.state = placeMarker(this.state, node);
      this.hideBanner();
      this.draw();
    } catch (error) {
      this.showBanner(`could not resolve the clicked location (${String(error)})`);
    }
  }

  private async plan(): Promise<void> {
    const selection = readySelection(this.state);
    if (!selection) {
      this.showBanner("pick a source and a destination first");
      return;
    }
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await requestRoute(
        this.baseUrl,
        buildRouteRequest(selection),
        controller.signal,
      );
      if (controller !== this.inflight) return; // superseded
      this.journeys = response.journeys;
      if (this.journeys.length === 0) {
        this.showBanner("no route found");
        this.summary.textContent = "";
      } else {
        this.hideBanner();
        this.describeJourneys();
        const points = this.journeys.flatMap((j) =>
          j.legs.flatMap((leg) => leg.coordinates),
        );
        this.viewport = fitViewport(
          points,
          this.viewport.width,
          this.viewport.height,
        );
      }
      this.draw();
    } catch (error) {
      if ((error as Error).name !== "AbortError") {
        this.showBanner(`planning failed (${String(error)})`);
      }
    }
  }

  private describeJourneys(): void {
    const lines = this.journeys.map((journey, i) => {
      const legs = journey.legs
        .map((leg) => (leg.name ? `${leg.mode} (${leg.name})` : leg.mode))
        .join(" → ");
      return `#${i + 1}: dep ${formatClockTime(journey.departure)}, ` +
        `arr ${formatClockTime(journey.arrival)} — ${legs}`;
    });
    this.summary.textContent = lines.join("\n");
  }

  private showBanner(text: string): void {
    this.banner.textContent = text;
    this.banner.style.display = "block";
  }

  private hideBanner(): void {
    this.banner.style.display = "none";
  }

  private draw(): void {
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    const v = this.viewport;

    for (const journey of this.journeys) {
      for (const spec of journeyPolylines(journey)) {
        if (spec.points.length < 2) continue;
        const path = document.createElementNS(SVG_NS, "path");
        path.setAttribute("d", toSvgPath(v, spec));
        path.setAttribute("stroke", spec.color);
        path.setAttribute("stroke-width", "3");
        path.setAttribute("fill", "none");
        path.classList.add("journey-leg", `mode-${spec.mode}`);
        this.svg.appendChild(path);
      }
    }

    const markers: Array<[{ lat: number; lng: number }, string]> = [];
    if (this.state.from) markers.push([this.state.from, "#1b5e20"]);
    if (this.state.to) markers.push([this.state.to, "#b71c1c"]);
    for (const [m, color] of markers) {
      const [x, y] = project(v, m.lat, m.lng);
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "6");
      dot.setAttribute("fill", color);
      dot.classList.add("endpoint-marker");
      this.svg.appendChild(dot);
    }
  }
}

window.addEventListener("DOMContentLoaded", () => new App());
