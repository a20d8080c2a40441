// @vitest-environment happy-dom
//
// End-to-end UI flows against a mocked network. The mock returns canned API
// payloads; the assertions check that every number on screen is one of those
// payload numbers, which is what rules out client-side fuzzy arithmetic.

import { afterEach, beforeEach, describe, expect, it } from 'vitest';

import type { CurveView, DecisionPayload, LexiconView, QueryResponse } from '../src/api.js';
import { initApp } from '../src/app.js';

interface Call {
  method: string;
  url: string;
  body: unknown;
}

type Responder = (method: string, url: string, body: unknown) => { status: number; body: unknown } | undefined;

const calls: Call[] = [];
let responder: Responder = () => undefined;
const realFetch = globalThis.fetch;

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

const EMPTY_LEXICON: LexiconView = {
  vocabulary: {
    objects: ['Character', 'Word', 'ChainOfChars'],
    goals: ['Select'],
    applicability: [
      ['Select', 'Character'],
      ['Select', 'Word'],
      ['Select', 'ChainOfChars']
    ]
  },
  entries: []
};

const GUM_SESSION: QueryResponse = {
  session_id: 'sess-1',
  status: 'needs_ratings',
  candidates: ['Character', 'Word', 'ChainOfChars'],
  unknown_surface: 'Gum',
  unknown_kind: 'object'
};

const GUM_DECISION: DecisionPayload = {
  final_coefficient: 0.575,
  chosen: 'Word',
  winners: ['Word'],
  scores: [
    { candidate: 'Character', coefficient: 0.525 },
    { candidate: 'Word', coefficient: 0.575 },
    { candidate: 'ChainOfChars', coefficient: 0.475 }
  ]
};

function gumCurve(candidate: string, vertices: [number, number, number, number]): CurveView {
  const [gamma, alpha, beta, delta] = vertices;
  return {
    surface: 'Gum',
    kind: 'object',
    candidate,
    gamma,
    alpha,
    beta,
    delta,
    points: [
      [0, 0],
      [gamma, 0],
      [alpha, 1],
      [beta, 1],
      [delta, 0],
      [1, 0]
    ]
  };
}

beforeEach(() => {
  document.body.innerHTML = `
    <form id="query-form">
      <input id="query-input" type="text" />
      <button type="submit">Ask</button>
    </form>
    <div id="status"></div>
    <div id="panel"></div>
    <button id="lexicon-refresh" type="button">refresh</button>
    <div id="lexicon-list"></div>`;
  calls.length = 0;
  responder = () => undefined;
  globalThis.fetch = (async (url: unknown, init?: RequestInit) => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ method, url: String(url), body });
    const out = responder(method, String(url), body) ?? {
      status: 500,
      body: { code: 'unknown', message: `unmocked ${method} ${url}` }
    };
    return { ok: out.status < 400, status: out.status, json: async () => out.body } as Response;
  }) as typeof fetch;
});

afterEach(() => {
  globalThis.fetch = realFetch;
});

function boot(extra: Responder = () => undefined): void {
  responder = (method, url, body) => {
    if (method === 'GET' && url === '/api/lexicon') {
      return { status: 200, body: EMPTY_LEXICON };
    }
    return extra(method, url, body);
  };
  initApp(document);
}

function ask(text: string): Promise<void> {
  const input = document.getElementById('query-input') as HTMLInputElement;
  input.value = text;
  document
    .getElementById('query-form')!
    .dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
  return flush();
}

function slide(candidate: string, value: string): void {
  const slider = document.querySelector(
    `input[data-candidate="${candidate}"]`
  ) as HTMLInputElement;
  slider.value = value;
  slider.dispatchEvent(new Event('input', { bubbles: true }));
}

function clickSubmitRatings(): Promise<void> {
  const button = document.querySelector('[data-action="submit-ratings"]') as HTMLButtonElement;
  button.click();
  return flush();
}

describe('query screen', () => {
  it('loads the lexicon browser on startup', async () => {
    boot();
    await flush();
    expect(calls.some((c) => c.url === '/api/lexicon')).toBe(true);
    expect(document.getElementById('lexicon-list')!.textContent).toContain(
      'No words learned yet'
    );
  });

  it('shows a resolved query as a banner, with no rating panel', async () => {
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return {
          status: 200,
          body: { session_id: 's', status: 'resolved', rewritten: 'How to Select a Word?' }
        };
      }
      return undefined;
    });
    await ask('How to Select a Word?');
    const status = document.getElementById('status')!;
    expect(status.querySelector('.banner.resolved')).not.toBeNull();
    expect(status.textContent).toContain('How to Select a Word?');
    expect(document.getElementById('panel')!.innerHTML).toBe('');
  });

  it('teaches the template on a parse error and recovers', async () => {
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return {
          status: 400,
          body: { code: 'parse_error', message: 'queries must follow the template' }
        };
      }
      return undefined;
    });
    await ask('what even is this');
    const status = document.getElementById('status')!;
    expect(status.textContent).toContain('queries must follow the template');
    expect(status.textContent).toContain('How to <goal> a <object>?');
  });
});

describe('rating and deciding', () => {
  function bootGumFlow(expectedRatings: Record<string, number>): void {
    boot((method, url, body) => {
      if (method === 'POST' && url === '/api/query') {
        return { status: 200, body: GUM_SESSION };
      }
      if (method === 'POST' && url === '/api/sessions/sess-1/ratings') {
        expect(body).toEqual({ ratings: expectedRatings });
        return {
          status: 200,
          body: { status: 'decided', decision: GUM_DECISION, rewritten: 'How to Select a Word?' }
        };
      }
      if (method === 'GET' && url.endsWith('/curve')) {
        if (url.includes('/Character/')) {
          return { status: 200, body: gumCurve('Character', [0.3, 0.3, 0.6, 0.6]) };
        }
        if (url.includes('/Word/')) {
          return { status: 200, body: gumCurve('Word', [0, 0.2, 0.7, 2.3 / 3]) };
        }
        return { status: 200, body: gumCurve('ChainOfChars', [0.3, 0.4, 0.5, 0.8]) };
      }
      return undefined;
    });
  }

  it('runs the full elicitation round trip', async () => {
    bootGumFlow({ Character: 0.6, Word: 0.2, ChainOfChars: 0.5 });
    await ask('How to Select a Gum?');

    const panel = document.getElementById('panel')!;
    expect(panel.textContent).toContain('Gum');
    expect(panel.querySelectorAll('input[type="range"]')).toHaveLength(3);
    const submit = panel.querySelector('[data-action="submit-ratings"]') as HTMLButtonElement;
    expect(submit.disabled).toBe(true);

    slide('Character', '0.6');
    expect(submit.disabled).toBe(false);
    slide('Word', '0.2');
    slide('ChainOfChars', '0.5');
    await clickSubmitRatings();

    const winner = panel.querySelector('tr[data-candidate="Word"]')!;
    expect(winner.querySelector('.badge.winner')).not.toBeNull();
    expect(panel.querySelector('[data-role="final-coefficient"]')!.textContent).toBe('0.575');
    expect(panel.textContent).toContain('How to Select a Word?');
  });

  it('shows every score the server sent, not only the winner', async () => {
    bootGumFlow({ Character: 0.6, Word: 0.2, ChainOfChars: 0.5 });
    await ask('How to Select a Gum?');
    slide('Character', '0.6');
    slide('Word', '0.2');
    slide('ChainOfChars', '0.5');
    await clickSubmitRatings();

    const rows = document.querySelectorAll('#panel tr[data-candidate]');
    expect(rows).toHaveLength(3);
    expect(
      document.querySelector('tr[data-candidate="Character"]')!.getAttribute('data-coefficient')
    ).toBe('0.525');
    expect(
      document.querySelector('tr[data-candidate="ChainOfChars"]')!.getAttribute('data-coefficient')
    ).toBe('0.475');
  });

  it('omits untouched sliders from the submission', async () => {
    bootGumFlow({ Word: 0.2 });
    await ask('How to Select a Gum?');
    slide('Word', '0.2');
    await clickSubmitRatings();
    const post = calls.find((c) => c.url.endsWith('/ratings'));
    expect(post).toBeDefined();
    expect(post!.body).toEqual({ ratings: { Word: 0.2 } });
  });

  it('draws curves whose vertices are exactly the API tuples', async () => {
    bootGumFlow({ Character: 0.6, Word: 0.2, ChainOfChars: 0.5 });
    await ask('How to Select a Gum?');
    slide('Character', '0.6');
    slide('Word', '0.2');
    slide('ChainOfChars', '0.5');
    await clickSubmitRatings();
    await flush();

    const figures = document.querySelectorAll('#panel .candidate-curve');
    expect(figures).toHaveLength(3);
    const word = document.querySelector('.candidate-curve[data-candidate="Word"]')!;
    const polygon = word.querySelector('polygon')!;
    expect(polygon.getAttribute('points')).toBe('0,0 0.2,1 0.7,1 0.7666666666666666,0');
    expect(word.classList.contains('winner')).toBe(true);
    const polyline = word.querySelector('polyline')!;
    expect(polyline.getAttribute('points')).toBe(
      '0,0 0,0 0.2,1 0.7,1 0.7666666666666666,0 1,0'
    );
  });

  it('refreshes the lexicon browser after a decision', async () => {
    bootGumFlow({ Word: 0.2 });
    await ask('How to Select a Gum?');
    const before = calls.filter((c) => c.url === '/api/lexicon').length;
    slide('Word', '0.2');
    await clickSubmitRatings();
    expect(calls.filter((c) => c.url === '/api/lexicon').length).toBe(before + 1);
  });
});

describe('server authority', () => {
  it('displays the server decision verbatim even when it disagrees with the scores', async () => {
    // The mock picks a "wrong" winner on purpose: a UI that recomputed
    // arg max or D_c locally would contradict these assertions.
    const upsideDown: DecisionPayload = {
      final_coefficient: 0.9999,
      chosen: 'ChainOfChars',
      winners: ['ChainOfChars'],
      scores: [
        { candidate: 'Character', coefficient: 0.9 },
        { candidate: 'ChainOfChars', coefficient: 0.1 }
      ]
    };
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return { status: 200, body: GUM_SESSION };
      }
      if (method === 'POST' && url.endsWith('/ratings')) {
        return { status: 200, body: { status: 'decided', decision: upsideDown } };
      }
      if (method === 'GET' && url.endsWith('/curve')) {
        return { status: 404, body: { code: 'not_found', message: 'no function' } };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');
    slide('Character', '0.9');
    await clickSubmitRatings();

    const row = document.querySelector('tr[data-candidate="ChainOfChars"]')!;
    expect(row.querySelector('.badge.winner')).not.toBeNull();
    expect(
      document.querySelector('tr[data-candidate="Character"]')!.querySelector('.badge.winner')
    ).toBeNull();
    expect(document.querySelector('[data-role="final-coefficient"]')!.textContent).toBe('0.9999');
  });
});

describe('recoverable failures', () => {
  it('keeps the session usable after a conflict response', async () => {
    let failNext = true;
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return { status: 200, body: GUM_SESSION };
      }
      if (method === 'POST' && url.endsWith('/ratings')) {
        if (failNext) {
          failNext = false;
          return { status: 409, body: { code: 'state_error', message: 'ratings already folded' } };
        }
        return {
          status: 200,
          body: { status: 'decided', decision: GUM_DECISION, rewritten: 'How to Select a Word?' }
        };
      }
      if (method === 'GET' && url.endsWith('/curve')) {
        return { status: 404, body: { code: 'not_found', message: 'no function' } };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');
    slide('Word', '0.2');
    await clickSubmitRatings();

    const status = document.getElementById('status')!;
    expect(status.textContent).toContain('ratings already folded');
    expect(status.textContent).toContain('try again');
    // the panel is still there and a second submit goes through
    await clickSubmitRatings();
    expect(document.querySelector('[data-role="final-coefficient"]')).not.toBeNull();
  });

  it('renders a validation failure without wiping the ratings panel', async () => {
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return { status: 200, body: GUM_SESSION };
      }
      if (method === 'POST' && url.endsWith('/ratings')) {
        return {
          status: 422,
          body: { code: 'domain_error', message: 'membership degrees live in [0, 1]' }
        };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');
    slide('Word', '0.2');
    await clickSubmitRatings();

    expect(document.getElementById('status')!.textContent).toContain(
      'membership degrees live in [0, 1]'
    );
    expect(document.querySelectorAll('#panel input[type="range"]')).toHaveLength(3);
  });
});

describe('below-threshold rounds', () => {
  it('says the word stays open and offers fresh sliders', async () => {
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return { status: 200, body: GUM_SESSION };
      }
      if (method === 'POST' && url.endsWith('/ratings')) {
        return { status: 200, body: { status: 'needs_ratings', decision: GUM_DECISION } };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');
    slide('Word', '0.2');
    await clickSubmitRatings();

    const panel = document.getElementById('panel')!;
    expect(panel.textContent).toContain('below the configured minimum');
    const sliders = panel.querySelectorAll('input[type="range"]');
    expect(sliders).toHaveLength(3);
    sliders.forEach((s) => expect(s.getAttribute('data-rated')).toBe('false'));
    const submit = panel.querySelector('[data-action="submit-ratings"]') as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
  });
});

describe('recognized words', () => {
  it('shows the stored decision and the rewritten query immediately', async () => {
    boot((method, url) => {
      if (method === 'POST' && url === '/api/query') {
        return {
          status: 200,
          body: {
            session_id: 'sess-2',
            status: 'decided',
            unknown_surface: 'Gum',
            unknown_kind: 'object',
            decision: GUM_DECISION,
            rewritten: 'How to Select a Word?'
          }
        };
      }
      if (method === 'GET' && url.endsWith('/curve')) {
        return { status: 200, body: gumCurve('Word', [0, 0.2, 0.7, 2.3 / 3]) };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');

    expect(document.getElementById('status')!.textContent).toContain(
      'recognized from earlier ratings'
    );
    expect(document.querySelector('[data-role="final-coefficient"]')!.textContent).toBe('0.575');
    expect(document.getElementById('panel')!.textContent).toContain('How to Select a Word?');
  });

  it('re-runs the rewritten query via the continue button', async () => {
    boot((method, url, body) => {
      if (method === 'POST' && url === '/api/query') {
        const text = (body as { text: string }).text;
        if (text === 'How to Select a Word?') {
          return {
            status: 200,
            body: { session_id: 's3', status: 'resolved', rewritten: 'How to Select a Word?' }
          };
        }
        return {
          status: 200,
          body: {
            session_id: 'sess-2',
            status: 'decided',
            unknown_surface: 'Gum',
            unknown_kind: 'object',
            decision: GUM_DECISION,
            rewritten: 'How to Select a Word?'
          }
        };
      }
      if (method === 'GET' && url.endsWith('/curve')) {
        return { status: 404, body: { code: 'not_found', message: 'nope' } };
      }
      return undefined;
    });
    await ask('How to Select a Gum?');
    (document.querySelector('[data-action="continue"]') as HTMLButtonElement).click();
    await flush();

    expect(document.querySelector('.banner.resolved')).not.toBeNull();
    const input = document.getElementById('query-input') as HTMLInputElement;
    expect(input.value).toBe('How to Select a Word?');
    expect(document.getElementById('panel')!.innerHTML).toBe('');
  });
});

describe('lexicon browser', () => {
  it('renders entries from the lexicon view on refresh', async () => {
    const view: LexiconView = {
      ...EMPTY_LEXICON,
      entries: [
        {
          surface: 'Gum',
          kind: 'object',
          functions: [
            {
              candidate: 'Word',
              gamma: 0.45,
              alpha: 0.6,
              beta: 0.7,
              delta: 1.0,
              left_count: 2,
              right_count: 1,
              decision_coefficient: 0.675
            }
          ],
          final_coefficient: 0.675,
          chosen: 'Word'
        }
      ]
    };
    let serveEntries = false;
    responder = (method, url) => {
      if (method === 'GET' && url === '/api/lexicon') {
        return { status: 200, body: serveEntries ? view : EMPTY_LEXICON };
      }
      return undefined;
    };
    initApp(document);
    await flush();
    expect(document.getElementById('lexicon-list')!.textContent).toContain('No words learned');

    serveEntries = true;
    (document.getElementById('lexicon-refresh') as HTMLButtonElement).click();
    await flush();

    const list = document.getElementById('lexicon-list')!;
    expect(list.querySelector('[data-surface="Gum"]')).not.toBeNull();
    expect(list.textContent).toContain('[0.45, 0.6, 0.7, 1]');
    expect(list.textContent).toContain('2/1');
    expect(list.querySelector('svg.trapezoid polygon')!.getAttribute('points')).toBe(
      '0.45,0 0.6,1 0.7,1 1,0'
    );
  });
});
