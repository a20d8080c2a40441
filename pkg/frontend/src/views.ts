// HTML renderers. Every function here is a pure string builder over API
// response data, so the whole presentation layer is testable without a DOM.

import type { CurveView, DecisionPayload, EntryView, LexiconView } from './api.js';
import { curveSvg, trapezoidSvg } from './chart.js';
import { Draft, hasRatings } from './ratings.js';

export const QUERY_TEMPLATE = 'How to <goal> a <object>?';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Human-friendly degree: the server's double trimmed to 4 decimals. */
export function degree(value: number): string {
  return value.toFixed(4).replace(/\.?0+$/, '') || '0';
}

export function renderResolved(rewritten: string): string {
  return (
    `<div class="banner resolved">resolved &mdash; ` +
    `<strong data-role="rewritten">${escapeHtml(rewritten)}</strong></div>`
  );
}

export function renderTemplateHint(message: string): string {
  return (
    `<div class="banner error"><p>${escapeHtml(message)}</p>` +
    `<p>Queries look like <code>${escapeHtml(QUERY_TEMPLATE)}</code></p></div>`
  );
}

export function renderRecoverable(message: string): string {
  return `<div class="banner error">${escapeHtml(message)} &mdash; you can try again.</div>`;
}

export function renderInfo(message: string): string {
  return `<div class="banner info">${escapeHtml(message)}</div>`;
}

export function renderRatingPanel(
  surface: string,
  kind: string,
  candidates: string[],
  draft: Draft
): string {
  const rows = candidates
    .map((candidate) => {
      const rated = draft.has(candidate);
      const value = draft.get(candidate);
      return (
        `<div class="rating-row">` +
        `<span class="candidate">${escapeHtml(candidate)}</span>` +
        `<input type="range" min="0" max="1" step="0.01"` +
        ` value="${rated ? value : 0.5}"` +
        ` data-candidate="${escapeHtml(candidate)}" data-rated="${rated}" />` +
        `<output>${rated ? degree(value as number) : '&mdash;'}</output>` +
        `</div>`
      );
    })
    .join('');
  const disabled = hasRatings(draft) ? '' : ' disabled';
  return (
    `<div class="rating-panel">` +
    `<p><strong>${escapeHtml(surface)}</strong> is an unknown ${escapeHtml(kind)}. ` +
    `Rate how well each candidate matches it (untouched sliders are skipped):</p>` +
    rows +
    `<button type="button" data-action="submit-ratings"${disabled}>Submit ratings</button>` +
    `</div>`
  );
}

export function renderDecision(decision: DecisionPayload, rewritten?: string): string {
  const winners = new Set(decision.winners);
  const rows = decision.scores
    .map((score) => {
      const badge =
        score.candidate === decision.chosen
          ? ` <span class="badge winner">winner</span>`
          : winners.has(score.candidate)
            ? ` <span class="badge tied">tied</span>`
            : '';
      return (
        `<tr data-candidate="${escapeHtml(score.candidate)}"` +
        ` data-coefficient="${score.coefficient}">` +
        `<td>${escapeHtml(score.candidate)}${badge}</td>` +
        `<td class="num">${degree(score.coefficient)}</td></tr>`
      );
    })
    .join('');
  const rewrite = rewritten
    ? `<p>rewritten: <strong data-role="rewritten">${escapeHtml(rewritten)}</strong> ` +
      `<button type="button" data-action="continue">continue with this query</button></p>`
    : '';
  return (
    `<div class="decision">` +
    `<table><thead><tr><th>candidate</th><th>D<sub>c</sub></th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<p>final decision coefficient D<sub>c</sub><sup>f</sup> = ` +
    `<strong data-role="final-coefficient" data-value="${decision.final_coefficient}">` +
    `${degree(decision.final_coefficient)}</strong></p>` +
    rewrite +
    `</div>`
  );
}

/** A below-threshold round: the ratings counted, but the word stays open. */
export function renderBelowThreshold(decision: DecisionPayload): string {
  return (
    renderInfo(
      `best candidate ${decision.chosen} scores ${degree(decision.final_coefficient)}, ` +
      `below the configured minimum; rate again to refine`
    ) + renderDecision(decision)
  );
}

export function renderCurveFigure(curve: CurveView, isWinner: boolean): string {
  return (
    `<figure class="candidate-curve${isWinner ? ' winner' : ''}" ` +
    `data-candidate="${escapeHtml(curve.candidate)}">` +
    curveSvg(curve, curve.points) +
    `<figcaption>${escapeHtml(curve.candidate)} ` +
    `[${degree(curve.gamma)}, ${degree(curve.alpha)}, ` +
    `${degree(curve.beta)}, ${degree(curve.delta)}]</figcaption>` +
    `</figure>`
  );
}

function renderEntry(entry: EntryView): string {
  const rows = entry.functions
    .map((f) => {
      const badge = f.candidate === entry.chosen ? ` <span class="badge winner">winner</span>` : '';
      return (
        `<tr data-candidate="${escapeHtml(f.candidate)}">` +
        `<td>${escapeHtml(f.candidate)}${badge}</td>` +
        `<td>${trapezoidSvg(f)}</td>` +
        `<td class="num">[${degree(f.gamma)}, ${degree(f.alpha)}, ` +
        `${degree(f.beta)}, ${degree(f.delta)}]</td>` +
        `<td class="num">${f.left_count}/${f.right_count}</td>` +
        `<td class="num" data-role="coefficient">${degree(f.decision_coefficient)}</td>` +
        `</tr>`
      );
    })
    .join('');
  return (
    `<article class="entry" data-surface="${escapeHtml(entry.surface)}" data-kind="${entry.kind}">` +
    `<h3>${escapeHtml(entry.surface)} <small>(${entry.kind})</small></h3>` +
    `<table><thead><tr><th>candidate</th><th>shape</th>` +
    `<th>[&gamma;, &alpha;, &beta;, &delta;]</th><th>n</th><th>D<sub>c</sub></th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<p>interpretation: <strong>${escapeHtml(entry.chosen)}</strong> ` +
    `(D<sub>c</sub><sup>f</sup> ${degree(entry.final_coefficient)})</p>` +
    `</article>`
  );
}

export function renderLexicon(view: LexiconView): string {
  if (view.entries.length === 0) {
    return `<p class="empty">No words learned yet. Ask a query with an unknown word to start.</p>`;
  }
  return view.entries.map(renderEntry).join('');
}
