// Wiring between the DOM and the API client. All markup comes from views.ts;
// this module only tracks session state and swaps innerHTML on the two
// live regions (#status and #panel) plus the lexicon browser.

import {
  ApiRequestError,
  DecisionPayload,
  QueryResponse,
  TermKind,
  getCurve,
  getLexicon,
  postQuery,
  postRatings
} from './api.js';
import { Draft, EMPTY_DRAFT, clampDegree, collect, hasRatings, setRating } from './ratings.js';
import {
  degree,
  renderBelowThreshold,
  renderCurveFigure,
  renderDecision,
  renderInfo,
  renderLexicon,
  renderRatingPanel,
  renderRecoverable,
  renderResolved,
  renderTemplateHint
} from './views.js';

interface AppState {
  sessionId: string | null;
  candidates: string[];
  unknownSurface: string | null;
  unknownKind: TermKind | null;
  rewritten: string | null;
  draft: Draft;
  busy: boolean;
}

function must(doc: Document, id: string): HTMLElement {
  const el = doc.getElementById(id);
  if (el === null) {
    throw new Error(`missing #${id}`);
  }
  return el;
}

export function initApp(doc: Document): void {
  const form = must(doc, 'query-form');
  const input = must(doc, 'query-input') as HTMLInputElement;
  const status = must(doc, 'status');
  const panel = must(doc, 'panel');
  const refreshButton = must(doc, 'lexicon-refresh');
  const lexiconList = must(doc, 'lexicon-list');

  const state: AppState = {
    sessionId: null,
    candidates: [],
    unknownSurface: null,
    unknownKind: null,
    rewritten: null,
    draft: EMPTY_DRAFT,
    busy: false
  };

  function showError(err: unknown): void {
    if (err instanceof ApiRequestError && err.code === 'parse_error') {
      status.innerHTML = renderTemplateHint(err.message);
    } else if (err instanceof ApiRequestError) {
      status.innerHTML = renderRecoverable(err.message);
    } else {
      status.innerHTML = renderRecoverable(err instanceof Error ? err.message : String(err));
    }
  }

  async function refreshLexicon(): Promise<void> {
    try {
      lexiconList.innerHTML = renderLexicon(await getLexicon());
    } catch (err) {
      lexiconList.innerHTML = renderRecoverable(
        err instanceof Error ? err.message : String(err)
      );
    }
  }

  /** Fetch one curve per scored candidate and append the figures. */
  async function showCurves(decision: DecisionPayload): Promise<void> {
    if (state.unknownKind === null || state.unknownSurface === null) {
      return;
    }
    const figures: string[] = [];
    for (const score of decision.scores) {
      try {
        const curve = await getCurve(state.unknownKind, state.unknownSurface, score.candidate);
        figures.push(renderCurveFigure(curve, score.candidate === decision.chosen));
      } catch {
        // a candidate without a stored function simply has no curve to draw
      }
    }
    if (figures.length > 0) {
      panel.insertAdjacentHTML('beforeend', `<div class="curves">${figures.join('')}</div>`);
    }
  }

  function applyQueryResponse(resp: QueryResponse): Promise<void> {
    state.sessionId = resp.session_id;
    state.candidates = resp.candidates ?? [];
    state.unknownSurface = resp.unknown_surface ?? null;
    state.unknownKind = resp.unknown_kind ?? null;
    state.rewritten = resp.rewritten ?? null;
    state.draft = EMPTY_DRAFT;
    if (resp.status === 'resolved') {
      status.innerHTML = renderResolved(resp.rewritten ?? '');
      panel.innerHTML = '';
      return Promise.resolve();
    }
    if (resp.status === 'decided' && resp.decision) {
      status.innerHTML = renderInfo('recognized from earlier ratings');
      panel.innerHTML = renderDecision(resp.decision, resp.rewritten);
      return showCurves(resp.decision);
    }
    status.innerHTML = '';
    panel.innerHTML = renderRatingPanel(
      state.unknownSurface ?? '(unknown)',
      state.unknownKind ?? 'word',
      state.candidates,
      state.draft
    );
    return Promise.resolve();
  }

  async function runQuery(text: string): Promise<void> {
    if (state.busy || text.trim() === '') {
      return;
    }
    state.busy = true;
    try {
      await applyQueryResponse(await postQuery(text));
    } catch (err) {
      showError(err);
    } finally {
      state.busy = false;
    }
  }

  async function submitDraft(): Promise<void> {
    if (state.busy || state.sessionId === null || !hasRatings(state.draft)) {
      return;
    }
    state.busy = true;
    try {
      const resp = await postRatings(state.sessionId, collect(state.draft));
      state.rewritten = resp.rewritten ?? null;
      if (resp.status === 'decided') {
        status.innerHTML = '';
        panel.innerHTML = renderDecision(resp.decision, resp.rewritten);
        state.sessionId = null;
        await showCurves(resp.decision);
      } else {
        // below the acceptance bar: ratings were folded in, word stays open
        status.innerHTML = '';
        state.draft = EMPTY_DRAFT;
        panel.innerHTML =
          renderBelowThreshold(resp.decision) +
          renderRatingPanel(
            state.unknownSurface ?? '(unknown)',
            state.unknownKind ?? 'word',
            state.candidates,
            state.draft
          );
      }
      await refreshLexicon();
    } catch (err) {
      showError(err);
    } finally {
      state.busy = false;
    }
  }

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void runQuery(input.value);
  });

  panel.addEventListener('input', (event) => {
    const target = event.target as HTMLElement;
    if (!(target instanceof HTMLInputElement) || target.dataset.candidate === undefined) {
      return;
    }
    const value = clampDegree(Number.parseFloat(target.value));
    state.draft = setRating(state.draft, target.dataset.candidate, value);
    target.dataset.rated = 'true';
    const output = target.parentElement?.querySelector('output');
    if (output) {
      output.textContent = degree(value);
    }
    const submit = panel.querySelector('[data-action="submit-ratings"]');
    if (submit instanceof HTMLButtonElement) {
      submit.disabled = !hasRatings(state.draft);
    }
  });

  panel.addEventListener('click', (event) => {
    const target = (event.target as HTMLElement).closest('[data-action]');
    if (!(target instanceof HTMLElement)) {
      return;
    }
    if (target.dataset.action === 'submit-ratings') {
      void submitDraft();
    } else if (target.dataset.action === 'continue' && state.rewritten !== null) {
      input.value = state.rewritten;
      void runQuery(state.rewritten);
    }
  });

  refreshButton.addEventListener('click', () => {
    void refreshLexicon();
  });

  void refreshLexicon();
}

// In the browser the page boots itself; under tests initApp is called
// explicitly against a constructed document.
const root = typeof document === 'undefined' ? null : document;
if (root !== null && root.getElementById('query-form') !== null) {
  initApp(root);
}
