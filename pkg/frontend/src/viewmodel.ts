/** Display transforms from server payloads to view rows.
 *
 * Scores, counts, and verdicts come through verbatim: the only arithmetic
 * here is layout (percent widths of bar segments), never metrics.
 */

import type {
  ConsistencyPayload,
  EntailmentPayload,
  FactPayload,
  ItemPayload,
  RunPayload,
} from './types.js';

export type QueueRow = {
  id: string;
  label: string;
  state: string;
  bfVersion: number;
  excerpt: string;
};

export function buildItemQueue(items: ItemPayload[]): QueueRow[] {
  return items
    .filter((item) => item.status === 'active')
    .map((item) => ({
      id: item.id,
      label: item.label,
      state: item.state,
      bfVersion: item.bf_version,
      excerpt: item.text.length > 80 ? item.text.slice(0, 77) + '…' : item.text,
    }));
}

export type ConsistencySegment = {
  digest: string | null; // null marks the syntax-failure segment
  size: number;
  widthPercent: number;
  isLargest: boolean;
};

/** One segment per equality group plus one for failed runs, in group-size
 * order, widths proportional to run counts. */
export function consistencySegments(consistency: ConsistencyPayload): ConsistencySegment[] {
  const total = consistency.n_runs;
  const largest = consistency.largest_group?.digest ?? null;
  const segments: ConsistencySegment[] = consistency.groups
    .slice()
    .sort((a, b) => b.size - a.size || a.run_indices[0]! - b.run_indices[0]!)
    .map((group) => ({
      digest: group.digest,
      size: group.size,
      widthPercent: (group.size / total) * 100,
      isLargest: group.digest === largest,
    }));
  if (consistency.failed_count > 0) {
    segments.push({
      digest: null,
      size: consistency.failed_count,
      widthPercent: (consistency.failed_count / total) * 100,
      isLargest: false,
    });
  }
  return segments;
}

export type FactRow = {
  ordinal: number;
  sentence: string;
  verdict: string;
  status: string;
  rationale: string;
  bypassCategory: string | null;
  bypassNote: string;
  canBypass: boolean;
};

export function factRows(facts: FactPayload[]): FactRow[] {
  return facts.map((fact) => ({
    ordinal: fact.fact_ordinal,
    sentence: fact.sentence_text,
    verdict: fact.verdict,
    status: fact.status,
    rationale: fact.rationale,
    bypassCategory: fact.bypass_category,
    bypassNote: fact.bypass_note,
    canBypass: fact.status === 'fail' || fact.status === 'indeterminate',
  }));
}

export type RunDetail = {
  runId: string;
  itemId: string;
  bfVersion: number;
  systematic: boolean;
  failedCount: number;
  representative: number | null;
  segments: ConsistencySegment[];
  // score strings exactly as the server computed them
  rawScore: string | null;
  finalScore: string | null;
  summary: EntailmentPayload['summary'] | null;
  facts: FactRow[];
  acceptEligible: boolean;
  stateHint: string | null;
};

export function buildRunDetail(run: RunPayload): RunDetail {
  return {
    runId: run.run_id,
    itemId: run.item_id,
    bfVersion: run.bf_version,
    systematic: run.consistency.systematic,
    failedCount: run.consistency.failed_count,
    representative: run.representative,
    segments: consistencySegments(run.consistency),
    rawScore: run.entailment ? run.entailment.raw_score : null,
    finalScore: run.entailment ? run.entailment.final_score : null,
    summary: run.entailment ? run.entailment.summary : null,
    facts: run.entailment ? factRows(run.entailment.facts) : [],
    acceptEligible: run.accept_eligible,
    stateHint: run.state_hint,
  };
}
