import type { OperationsPayload, PlanDoc } from "./types.js";

/** Fixed menu order: homogenize data, homogenize style, differentiate,
 * integrate. */
export const CATEGORY_ORDER = [
  "homogenize-data",
  "homogenize-style",
  "differentiate",
  "integrate",
] as const;

export const CATEGORY_LABELS: Record<string, string> = {
  "homogenize-data": "Homogenize data",
  "homogenize-style": "Homogenize style",
  "differentiate": "Differentiate",
  "integrate": "Integrate",
};

export interface OperationTile {
  planId: string;
  category: string;
  description: string;
  question: string | null;
}

export interface MenuSection {
  category: string;
  label: string;
  count: number;
  tiles: OperationTile[];
}

/** Build the per-view operation menu from the service payload: one section
 * per non-empty category, in the fixed order, with a tile per plan. */
export function buildMenu(payload: OperationsPayload): MenuSection[] {
  const byCategory = new Map<string, PlanDoc[]>();
  for (const plan of payload.plans) {
    const bucket = byCategory.get(plan.category) ?? [];
    bucket.push(plan);
    byCategory.set(plan.category, bucket);
  }
  const sections: MenuSection[] = [];
  for (const category of CATEGORY_ORDER) {
    const plans = byCategory.get(category);
    if (!plans || plans.length === 0) continue;
    sections.push({
      category,
      label: CATEGORY_LABELS[category],
      count: plans.length,
      tiles: plans.map((p) => ({
        planId: p.id,
        category: p.category,
        description: p.description,
        question: p.question,
      })),
    });
  }
  return sections;
}

/** Category -> count, as the menu headers display them. */
export function menuCounts(sections: MenuSection[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const section of sections) counts[section.category] = section.count;
  return counts;
}

/** Badge on a view tile: total operations available for the view. */
export function totalOperations(payload: OperationsPayload): number {
  return payload.plans.length;
}
