import { afterEach, describe, expect, it } from 'vitest';

import {
  ApiRequestError,
  getCurve,
  getLexicon,
  postQuery,
  postRatings
} from '../src/api.js';

interface Call {
  url: string;
  init?: RequestInit;
}

const calls: Call[] = [];
const realFetch = globalThis.fetch;

function respondWith(status: number, body: unknown): void {
  globalThis.fetch = (async (url: unknown, init?: RequestInit) => {
    calls.push({ url: String(url), init });
    return {
      ok: status < 400,
      status,
      json: async () => body
    } as Response;
  }) as typeof fetch;
}

function respondWithoutJson(status: number): void {
  globalThis.fetch = (async (url: unknown, init?: RequestInit) => {
    calls.push({ url: String(url), init });
    return {
      ok: status < 400,
      status,
      json: async () => {
        throw new Error('empty body');
      }
    } as unknown as Response;
  }) as typeof fetch;
}

afterEach(() => {
  globalThis.fetch = realFetch;
  calls.length = 0;
});

describe('postQuery', () => {
  it('posts the raw text to /api/query', async () => {
    respondWith(200, { session_id: 's1', status: 'resolved', rewritten: 'How to Copy a Word?' });
    const resp = await postQuery('How to Copy a Word?');
    expect(resp.status).toBe('resolved');
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe('/api/query');
    expect(calls[0].init?.method).toBe('POST');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ text: 'How to Copy a Word?' });
  });
});

describe('postRatings', () => {
  it('posts the ratings under the session id', async () => {
    respondWith(200, {
      status: 'decided',
      decision: { final_coefficient: 0.575, chosen: 'Word', winners: ['Word'], scores: [] }
    });
    await postRatings('abc 123', { Word: 0.2 });
    expect(calls[0].url).toBe('/api/sessions/abc%20123/ratings');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ ratings: { Word: 0.2 } });
  });
});

describe('getLexicon', () => {
  it('reads the whole lexicon view', async () => {
    const view = { vocabulary: { objects: [], goals: [], applicability: [] }, entries: [] };
    respondWith(200, view);
    expect(await getLexicon()).toEqual(view);
    expect(calls[0].url).toBe('/api/lexicon');
    expect(calls[0].init?.method).toBeUndefined();
  });
});

describe('getCurve', () => {
  it('builds the nested curve path and encodes the words', async () => {
    respondWith(200, { points: [] });
    await getCurve('object', 'Gum Tree', 'Word', 11);
    expect(calls[0].url).toBe('/api/lexicon/object/Gum%20Tree/Word/curve?samples=11');
  });

  it('leaves samples to the server default when not given', async () => {
    respondWith(200, { points: [] });
    await getCurve('goal', 'Gum', 'Copy');
    expect(calls[0].url).toBe('/api/lexicon/goal/Gum/Copy/curve');
  });
});

describe('error handling', () => {
  it('maps the service error body onto ApiRequestError', async () => {
    respondWith(409, { code: 'state_error', message: 'session already decided' });
    const err = await postRatings('s1', { Word: 1 }).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiRequestError);
    const apiErr = err as ApiRequestError;
    expect(apiErr.code).toBe('state_error');
    expect(apiErr.status).toBe(409);
    expect(apiErr.message).toBe('session already decided');
  });

  it('falls back to a generic message when the body is not JSON', async () => {
    respondWithoutJson(502);
    const err = await getLexicon().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiRequestError);
    expect((err as ApiRequestError).code).toBe('unknown');
    expect((err as ApiRequestError).message).toBe('HTTP 502');
  });
});
