// Draft ratings for one elicitation round. Sliders start unset so that
// candidates the user never touched are omitted from the submission.

export type Draft = ReadonlyMap<string, number>;

export const EMPTY_DRAFT: Draft = new Map();

/** Clamp to [0,1] and snap to the 0.01 slider step. */
export function clampDegree(raw: number): number {
  const bounded = Math.min(1, Math.max(0, raw));
  return Math.round(bounded * 100) / 100;
}

export function setRating(draft: Draft, candidate: string, raw: number): Draft {
  const next = new Map(draft);
  next.set(candidate, clampDegree(raw));
  return next;
}

/** The payload for POST ratings: rated candidates only. */
export function collect(draft: Draft): Record<string, number> {
  return Object.fromEntries(draft);
}

export function hasRatings(draft: Draft): boolean {
  return draft.size > 0;
}
