import { describe, expect, it } from "vitest";

import { ALL_MODES, buildRouteRequest } from "../src/api.js";
import type { PlanSelection } from "../src/api.js";

const baseSelection: PlanSelection = {
  from: { lat: 47.9991, lng: 7.8422 },
  to: 11,
  depTimeSeconds: 57000,
  modes: { car: true, bike: true, foot: true, tram: true },
};

describe("buildRouteRequest", () => {
  it("carries exactly the four request fields", () => {
    const request = buildRouteRequest(baseSelection);
    expect(Object.keys(request).sort()).toEqual(["depTime", "from", "modes", "to"]);
    expect(request.depTime).toBe(57000);
    expect(request.from).toEqual({ lat: 47.9991, lng: 7.8422 });
    expect(request.to).toBe(11);
  });

  it("includes every enabled mode", () => {
    const request = buildRouteRequest(baseSelection);
    expect([...request.modes].sort()).toEqual([...ALL_MODES].sort());
  });

  it("drops tram from the payload when toggled off", () => {
    const request = buildRouteRequest({
      ...baseSelection,
      modes: { car: true, bike: true, foot: true, tram: false },
    });
    expect(request.modes).not.toContain("tram");
    expect(request.modes).toEqual(["car", "bike", "foot"]);
  });

  it("keeps node-id endpoints as they are", () => {
    const request = buildRouteRequest({ ...baseSelection, from: 1, to: 2 });
    expect(request.from).toBe(1);
    expect(request.to).toBe(2);
  });
});
