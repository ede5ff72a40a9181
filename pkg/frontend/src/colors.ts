/** Vertex colors derived solely from the service report: positive defect
 * renders warm (red), excess (negative defect) cool (blue), flat interior
 * vertices neutral (purple), boundary vertices gray. */

import type { VertexRow } from "./api.js";

export const WARM = "#d62728"; // defect > 0
export const COOL = "#1f77b4"; // defect < 0 (excess)
export const NEUTRAL = "#9467bd"; // defect = 0
export const BOUNDARY = "#7f7f7f";

export function vertexColor(v: VertexRow): string {
  if (v.kind !== "interior" || !v.defect) return BOUNDARY;
  if (v.defect.float > 0) return WARM;
  if (v.defect.float < 0) return COOL;
  return NEUTRAL;
}

/** The string shown next to a vertex: the exact excess for hyperbolic
 * points, the exact defect otherwise — always the report's own display
 * strings, never recomputed. */
export function vertexLabel(v: VertexRow): string {
  if (v.kind !== "interior") return v.turning ? `turn ${v.turning.display}` : "";
  if (v.excess) return `excess ${v.excess.display}`;
  return `defect ${v.defect ? v.defect.display : "0°"}`;
}
