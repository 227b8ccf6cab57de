/** HTML rendering of the verifier screens (plain string templates). */

import { BipartiteLayout, EntailmentBar, QuadrantArrow } from './charts.js';
import type { BfPayload } from './types.js';
import { FactRow, QueueRow, RunDetail } from './viewmodel.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderQueue(rows: QueueRow[], selected: string | null): string {
  if (rows.length === 0) {
    return '<p class="empty">No items yet. Ingest a corpus with the CLI.</p>';
  }
  const lines = rows.map((row) => {
    const cls = row.id === selected ? 'queue-row selected' : 'queue-row';
    return (
      `<tr class="${cls}" data-item="${escapeHtml(row.id)}">` +
      `<td>${escapeHtml(row.label)}</td>` +
      `<td><span class="state state-${row.state}">${row.state}</span></td>` +
      `<td>v${row.bfVersion}</td>` +
      `<td class="excerpt">${escapeHtml(row.excerpt)}</td></tr>`
    );
  });
  return `<table class="queue"><thead><tr><th>item</th><th>state</th><th>facts</th><th>text</th></tr></thead><tbody>${lines.join('')}</tbody></table>`;
}

function renderSegments(detail: RunDetail): string {
  const parts = detail.segments.map((segment) => {
    const cls =
      segment.digest === null
        ? 'seg failed'
        : segment.isLargest
          ? 'seg largest'
          : 'seg group';
    const title = segment.digest === null ? 'failed syntactic check' : segment.digest.slice(0, 8);
    return `<div class="${cls}" style="width:${segment.widthPercent}%" title="${title}">${segment.size}</div>`;
  });
  return `<div class="consistency-bar">${parts.join('')}</div>`;
}

function renderFactRow(runId: string, fact: FactRow): string {
  const bypass = fact.canBypass
    ? `<button class="bypass" data-run="${escapeHtml(runId)}" data-fact="${fact.ordinal}">bypass…</button>`
    : fact.bypassCategory
      ? `<span class="bypass-tag">${escapeHtml(fact.bypassCategory)}</span>`
      : '';
  return (
    `<tr class="fact fact-${fact.status}">` +
    `<td>${fact.ordinal}</td>` +
    `<td>${escapeHtml(fact.sentence)}</td>` +
    `<td>${fact.verdict}</td>` +
    `<td>${fact.status}</td>` +
    `<td class="rationale">${escapeHtml(fact.rationale)}</td>` +
    `<td>${bypass}</td></tr>`
  );
}

export function renderRunDetail(detail: RunDetail): string {
  const header =
    `<h2>run ${escapeHtml(detail.runId)}</h2>` +
    `<p>item ${escapeHtml(detail.itemId)} · facts v${detail.bfVersion} · ` +
    `systematic: <b>${detail.systematic}</b> · syntax failures: ${detail.failedCount}</p>`;
  const segments = renderSegments(detail);
  if (detail.rawScore === null) {
    const hint = detail.stateHint ? `<p class="hint">${escapeHtml(detail.stateHint)}</p>` : '';
    return header + segments + hint + '<p class="empty">No entailment report (run not systematic).</p>';
  }
  // server-computed strings, displayed verbatim
  const scores =
    `<p class="scores">entailment raw <span class="score" id="raw-score">${escapeHtml(detail.rawScore)}</span>` +
    ` · final <span class="score" id="final-score">${escapeHtml(detail.finalScore!)}</span></p>`;
  const facts = detail.facts.map((fact) => renderFactRow(detail.runId, fact)).join('');
  const accept = detail.acceptEligible
    ? `<button class="accept" data-run="${escapeHtml(detail.runId)}" data-item="${escapeHtml(detail.itemId)}">Accept &amp; merge</button>`
    : '';
  const hint = detail.stateHint ? `<p class="hint">${escapeHtml(detail.stateHint)}</p>` : '';
  return (
    header +
    segments +
    scores +
    hint +
    `<table class="facts"><thead><tr><th>#</th><th>sentence</th><th>verdict</th><th>status</th><th>rationale</th><th></th></tr></thead><tbody>${facts}</tbody></table>` +
    accept
  );
}

export function renderBfEditor(
  facts: BfPayload[],
  suggestions: BfPayload[],
  assignedIds: string[],
  version: number,
): string {
  const suggested = new Set(suggestions.map((s) => s.id));
  const assigned = new Set(assignedIds);
  const rows = facts.map((fact) => {
    const checked = assigned.has(fact.id) ? ' checked' : '';
    const mark = suggested.has(fact.id) ? ' <span class="suggested">suggested</span>' : '';
    return (
      `<li><label><input type="checkbox" class="bf-check" value="${escapeHtml(fact.id)}"${checked}>` +
      ` ${escapeHtml(fact.id)} — ${escapeHtml(fact.text)}</label>${mark}</li>`
    );
  });
  return (
    `<p>assignment version ${version}</p>` +
    `<ul class="bf-list">${rows.join('')}</ul>` +
    `<input type="text" id="new-bf-text" placeholder="New background fact…">` +
    `<input type="text" id="new-bf-terms" placeholder="key terms, comma separated">` +
    `<button id="add-bf">Add fact</button>` +
    `<button id="assign-bfs" data-version="${version}">Assign checked</button>` +
    `<button id="run-with-bfs">Run with facts</button>`
  );
}

export function renderEntailmentBarsSvg(bars: EntailmentBar[], height = 160): string {
  if (bars.length === 0) {
    return '<p class="empty">No runs yet.</p>';
  }
  const barWidth = 28;
  const gap = 12;
  const width = bars.length * (barWidth + gap) + gap;
  const rects = bars
    .map((bar, i) => {
      const x = gap + i * (barWidth + gap);
      let y = height - 20;
      const segs = bar.segments
        .map((segment) => {
          const h = ((height - 20) * segment.heightPercent) / 100;
          y -= h;
          return `<rect class="bar-${segment.kind}" x="${x}" y="${y}" width="${barWidth}" height="${h}"><title>${segment.kind}: ${segment.count}</title></rect>`;
        })
        .join('');
      const label = `<text x="${x + barWidth / 2}" y="${height - 6}" text-anchor="middle">${escapeHtml(bar.itemId.split(':').pop() ?? '')}</text>`;
      return segs + label;
    })
    .join('');
  return `<svg viewBox="0 0 ${width} ${height}" class="chart">${rects}</svg>`;
}

export function renderQuadrantSvg(arrows: QuadrantArrow[], size = 260): string {
  if (arrows.length === 0) {
    return '<p class="empty">Nothing to compare yet.</p>';
  }
  const maxTriples = Math.max(...arrows.flatMap((a) => [a.from.triples, a.to.triples]), 1);
  const maxEntities = Math.max(...arrows.flatMap((a) => [a.from.entities, a.to.entities]), 1);
  const sx = (t: number) => 30 + (t / maxTriples) * (size - 60);
  const sy = (e: number) => size - 30 - (e / maxEntities) * (size - 60);
  const lines = arrows
    .map(
      (a) =>
        `<line x1="${sx(a.from.triples)}" y1="${sy(a.from.entities)}" ` +
        `x2="${sx(a.to.triples)}" y2="${sy(a.to.entities)}" class="arrow ${a.quadrant}" marker-end="url(#head)">` +
        `<title>${a.quadrant}</title></line>`,
    )
    .join('');
  return (
    `<svg viewBox="0 0 ${size} ${size}" class="chart">` +
    `<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z"/></marker></defs>` +
    `<text x="${size / 2}" y="${size - 6}" text-anchor="middle">triples</text>` +
    `<text x="10" y="${size / 2}" transform="rotate(-90 10 ${size / 2})" text-anchor="middle">entities</text>` +
    lines +
    '</svg>'
  );
}

export function renderBipartiteSvg(layout: BipartiteLayout): string {
  if (layout.concepts.length === 0) {
    return '<p class="empty">No concepts connect enough paragraphs yet.</p>';
  }
  const edges = layout.edges
    .map((e) => `<line x1="${e.x1}" y1="${e.y1}" x2="${e.x2}" y2="${e.y2}" class="edge"/>`)
    .join('');
  const concepts = layout.concepts
    .map(
      (c) =>
        `<g><rect x="${c.x - 6}" y="${c.y - 6}" width="12" height="12" class="concept"><title>${escapeHtml(c.label)} (${c.degree})</title></rect>` +
        `<text x="${c.x}" y="${c.y - 10}" text-anchor="middle">${escapeHtml(c.label)}</text></g>`,
    )
    .join('');
  const paragraphs = layout.paragraphs
    .map((p) => `<circle cx="${p.x}" cy="${p.y}" r="5" class="paragraph"><title>${escapeHtml(p.id)}</title></circle>`)
    .join('');
  return `<svg viewBox="0 0 ${layout.width} ${layout.height}" class="chart">${edges}${concepts}${paragraphs}</svg>`;
}

export function renderError(error: string, detail: string): string {
  return (
    `<div class="error-banner"><b>${escapeHtml(error)}</b> ${escapeHtml(detail)} ` +
    `<button id="retry">retry</button></div>`
  );
}
