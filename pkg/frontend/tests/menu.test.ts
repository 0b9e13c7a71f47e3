/** Menu fidelity: the category counts the UI displays equal the plan counts
 * the service reports, for every view of every fixture snapshot. */
import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { CATEGORY_ORDER, buildMenu, menuCounts, totalOperations }
  from "../src/menu.js";
import type { Snapshot } from "../src/types.js";

const FIXTURES = join(__dirname, "fixtures");

function snapshots(): [string, Snapshot][] {
  return readdirSync(FIXTURES)
    .filter((name) => name.endsWith(".snapshot.json"))
    .map((name) => [
      name,
      JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as Snapshot,
    ]);
}

describe("operation menu", () => {
  it("shows exactly the service's category counts on every fixture view",
    () => {
      let checked = 0;
      for (const [name, snap] of snapshots()) {
        for (const [viewId, payload] of Object.entries(snap.views)) {
          const sections = buildMenu(payload);
          expect(menuCounts(sections), `${name}/${viewId}`)
            .toEqual(payload.counts);
          checked += 1;
        }
      }
      expect(checked).toBeGreaterThanOrEqual(20);
    });

  it("orders sections homogenize data, style, differentiate, integrate",
    () => {
      for (const [, snap] of snapshots()) {
        for (const payload of Object.values(snap.views)) {
          const order = buildMenu(payload).map((s) => s.category);
          const expected = CATEGORY_ORDER.filter((c) => order.includes(c));
          expect(order).toEqual(expected);
        }
      }
    });

  it("shows only non-empty categories and one tile per plan", () => {
    for (const [, snap] of snapshots()) {
      for (const payload of Object.values(snap.views)) {
        const sections = buildMenu(payload);
        for (const section of sections) {
          expect(section.count).toBeGreaterThan(0);
          expect(section.tiles).toHaveLength(section.count);
        }
        const tiles = sections.flatMap((s) => s.tiles.map((t) => t.planId));
        expect(new Set(tiles).size).toBe(payload.plans.length);
        expect(totalOperations(payload)).toBe(payload.plans.length);
      }
    }
  });

  it("carries each plan's question onto its tile", () => {
    for (const [, snap] of snapshots()) {
      for (const payload of Object.values(snap.views)) {
        const byId = new Map(payload.plans.map((p) => [p.id, p]));
        for (const section of buildMenu(payload)) {
          for (const tile of section.tiles) {
            expect(tile.question).toBe(byId.get(tile.planId)!.question);
          }
        }
      }
    }
  });

  it("yields an empty menu for a relation-free view", () => {
    const payload = { viewId: "solo", counts: {}, plans: [] };
    expect(buildMenu(payload)).toEqual([]);
  });
});
