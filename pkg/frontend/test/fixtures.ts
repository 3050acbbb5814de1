// Golden /route response captured from the server running on the toy
// fixture (Freiburg-side cluster to the Karlsruhe-side node at 15:50).
import type { RouteResponse } from "../src/api.js";

export const GOLDEN_ROUTE_RESPONSE: RouteResponse = {
  journeys: [
    {
      legs: [
        {
          mode: "foot",
          coordinates: [
            [47.999, 7.842100000000001],
            [47.999, 7.842100000000001],
          ],
          departure: 57000.0,
          arrival: 57300.0,
        },
        {
          mode: "tram",
          coordinates: [
            [47.999, 7.842100000000001],
            [48.476600000000005, 7.946599999999998],
            [49.0069, 8.403700000000002],
          ],
          departure: 57360.0,
          arrival: 61080.0,
          name: "t104",
        },
        {
          mode: "foot",
          coordinates: [
            [49.0069, 8.403700000000002],
            [49.0069, 8.403700000000002],
          ],
          departure: 61080.0,
          arrival: 61380.0,
        },
      ],
      departure: 57000.0,
      arrival: 61380.0,
      totalCost: 4320.0,
    },
  ],
};
