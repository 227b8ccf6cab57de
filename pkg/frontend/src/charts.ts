/** Chart data transforms: stacked entailment bars, the entity/triple
 * quadrant arrow, carry-over bars, and the bipartite layout.
 *
 * Segment heights and arrow endpoints come straight from server counts;
 * only pixel placement happens here.
 */

import type { BipartitePayload, ComparePayload, RunPayload } from './types.js';

export type BarSegment = { kind: 'pass' | 'bypassed' | 'fail' | 'indeterminate'; count: number; heightPercent: number };

export type EntailmentBar = {
  runId: string;
  itemId: string;
  finalScore: string | null;
  segments: BarSegment[];
};

/** Per-run stacked bar from the server's status counts. */
export function entailmentBars(runs: RunPayload[]): EntailmentBar[] {
  return runs.map((run) => {
    const summary = run.entailment?.summary;
    const segments: BarSegment[] = [];
    if (summary && summary.n_facts > 0) {
      const kinds: [BarSegment['kind'], number][] = [
        ['pass', summary.n_pass],
        ['bypassed', summary.n_bypassed],
        ['fail', summary.n_fail],
        ['indeterminate', summary.n_indeterminate],
      ];
      for (const [kind, count] of kinds) {
        if (count > 0) {
          segments.push({ kind, count, heightPercent: (count / summary.n_facts) * 100 });
        }
      }
    }
    return {
      runId: run.run_id,
      itemId: run.item_id,
      finalScore: run.entailment ? run.entailment.final_score : null,
      segments,
    };
  });
}

export type QuadrantArrow = {
  from: { triples: number; entities: number };
  to: { triples: number; entities: number };
  quadrant: string;
  scenario: string | null;
};

/** Arrow in the (triples, entities) plane from the base run to the other. */
export function quadrantArrow(compare: ComparePayload): QuadrantArrow {
  return {
    from: {
      triples: compare.delta.base.triples,
      entities: compare.delta.base.entities_with_literals,
    },
    to: {
      triples: compare.delta.other.triples,
      entities: compare.delta.other.entities_with_literals,
    },
    quadrant: compare.delta.quadrant,
    scenario: compare.scenario,
  };
}

export type CarryoverBar = { itemId: string; fraction: string; heightPercent: number };

export function carryoverBars(compares: ComparePayload[]): CarryoverBar[] {
  return compares
    .filter((c) => c.rse_carryover !== null)
    .map((c) => ({
      itemId: c.item_id,
      fraction: c.rse_carryover!.fraction,
      heightPercent: c.rse_carryover!.value * 100,
    }));
}

export type BipartiteLayout = {
  concepts: { label: string; x: number; y: number; degree: number }[];
  paragraphs: { id: string; x: number; y: number }[];
  edges: { x1: number; y1: number; x2: number; y2: number }[];
  width: number;
  height: number;
};

/** Two-row layout: concept squares on top, paragraph dots below. */
export function bipartiteLayout(
  payload: BipartitePayload,
  width = 800,
  height = 240,
): BipartiteLayout {
  const conceptY = 40;
  const paragraphY = height - 40;
  const spread = (count: number, index: number) =>
    count <= 1 ? width / 2 : 40 + (index * (width - 80)) / (count - 1);

  const concepts = payload.concepts.map((concept, i) => ({
    label: concept.label,
    x: spread(payload.concepts.length, i),
    y: conceptY,
    degree: concept.occurrence_count,
  }));
  const paragraphs = payload.paragraphs.map((id, i) => ({
    id,
    x: spread(payload.paragraphs.length, i),
    y: paragraphY,
  }));
  const byLabel = new Map(concepts.map((c) => [c.label, c]));
  const byId = new Map(paragraphs.map((p) => [p.id, p]));
  const edges = payload.edges.flatMap((edge) => {
    const from = byLabel.get(edge.concept);
    const to = byId.get(edge.paragraph);
    return from && to ? [{ x1: from.x, y1: from.y, x2: to.x, y2: to.y }] : [];
  });
  return { concepts, paragraphs, edges, width, height };
}
