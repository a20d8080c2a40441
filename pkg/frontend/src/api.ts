// Typed client for the fuzzylex HTTP API. All numbers displayed anywhere in
// the UI come out of these responses; nothing fuzzy is computed client-side.

const API = '/api';

export type SessionStatus = 'resolved' | 'needs_ratings' | 'decided';
export type TermKind = 'object' | 'goal';

export interface ScoreItem {
  candidate: string;
  coefficient: number;
}

export interface DecisionPayload {
  final_coefficient: number;
  chosen: string;
  winners: string[];
  scores: ScoreItem[];
}

export interface QueryResponse {
  session_id: string;
  status: SessionStatus;
  candidates?: string[];
  unknown_surface?: string;
  unknown_kind?: TermKind;
  decision?: DecisionPayload;
  rewritten?: string;
}

export interface RatingsResponse {
  status: 'needs_ratings' | 'decided';
  decision: DecisionPayload;
  rewritten?: string;
}

export interface FunctionView {
  candidate: string;
  gamma: number;
  alpha: number;
  beta: number;
  delta: number;
  left_count: number;
  right_count: number;
  decision_coefficient: number;
}

export interface EntryView {
  surface: string;
  kind: TermKind;
  functions: FunctionView[];
  final_coefficient: number;
  chosen: string;
}

export interface VocabularyView {
  objects: string[];
  goals: string[];
  applicability: [string, string][];
}

export interface LexiconView {
  vocabulary: VocabularyView;
  entries: EntryView[];
}

export interface CurveView {
  surface: string;
  kind: TermKind;
  candidate: string;
  gamma: number;
  alpha: number;
  beta: number;
  delta: number;
  points: [number, number][];
}

/** Error body the service attaches to every non-2xx response. */
export class ApiRequestError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number
  ) {
    super(message);
    this.name = 'ApiRequestError';
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(API + path, init);
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const record = (body ?? {}) as Record<string, unknown>;
    const code = typeof record.code === 'string' ? record.code : 'unknown';
    const message =
      typeof record.message === 'string' ? record.message : `HTTP ${response.status}`;
    throw new ApiRequestError(code, message, response.status);
  }
  return body as T;
}

function post<T>(path: string, payload: unknown): Promise<T> {
  return request<T>(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload)
  });
}

export function postQuery(text: string): Promise<QueryResponse> {
  return post('/query', { text });
}

export function postRatings(
  sessionId: string,
  ratings: Record<string, number>
): Promise<RatingsResponse> {
  return post(`/sessions/${encodeURIComponent(sessionId)}/ratings`, { ratings });
}

export function getLexicon(): Promise<LexiconView> {
  return request('/lexicon');
}

export function getCurve(
  kind: TermKind,
  surface: string,
  candidate: string,
  samples?: number
): Promise<CurveView> {
  const base = `/lexicon/${kind}/${encodeURIComponent(surface)}/${encodeURIComponent(candidate)}/curve`;
  return request(samples === undefined ? base : `${base}?samples=${samples}`);
}
