/** Server payload shapes; the UI renders these verbatim and computes no
 * metric of its own. */

export type ItemPayload = {
  id: string;
  chapter: string;
  seq: number;
  label: string;
  text: string;
  status: 'active' | 'superseded';
  parent_id: string | null;
  split_index: number | null;
  state: string;
  bf_version: number;
  runs?: RunIndexRow[];
};

export type RunIndexRow = {
  run_id: string;
  item_id: string;
  bf_version: number;
  created_at: number;
  systematic: boolean;
  final_score: string | null;
};

export type TranscriptPayload = {
  prompt_text: string;
  prompt_kind: string;
  response_text: string;
  transport: string;
  request_digest: string;
  timestamp: number;
  attempt: number;
  repeat_index: number;
  template_version: string;
};

export type RunOutcomePayload = {
  run_index: number;
  digest: string | null;
  error: string | null;
  extracted_ttl: string;
  subject_entities: string[];
  transcript: TranscriptPayload;
};

export type ConsistencyPayload = {
  n_runs: number;
  equality_mode: string;
  failed_count: number;
  systematic: boolean;
  largest_group: { digest: string; run_indices: number[]; size: number } | null;
  groups: { digest: string; run_indices: number[]; size: number }[];
  runs: RunOutcomePayload[];
};

export type FactPayload = {
  fact_ordinal: number;
  sentence_text: string;
  verdict: 'yes' | 'no' | 'indeterminate';
  status: 'pass' | 'fail' | 'bypassed' | 'indeterminate';
  rationale: string;
  bypass_category: string | null;
  bypass_note: string;
};

export type EntailmentPayload = {
  rdf_digest: string;
  raw_score: string;
  raw_score_value: number;
  final_score: string;
  final_score_value: number;
  summary: {
    n_facts: number;
    n_pass: number;
    n_fail: number;
    n_bypassed: number;
    n_indeterminate: number;
  };
  facts: FactPayload[];
};

export type RunPayload = {
  run_id: string;
  item_id: string;
  bf_version: number;
  template_version: string;
  n_runs: number;
  equality_mode: string;
  consistency: ConsistencyPayload;
  representative: number | null;
  representative_ttl: string | null;
  entailment: EntailmentPayload | null;
  created_at: number;
  state_hint: string | null;
  error: string | null;
  accept_eligible: boolean;
};

export type BfPayload = {
  id: string;
  text: string;
  key_terms: string[];
  created_seq?: number;
  origin_item?: string | null;
};

export type AssignmentPayload = {
  item_id: string;
  bf_ids: string[];
  version: number;
  warnings: string[];
};

export type CountsPayload = {
  entities_named: number;
  entities_with_literals: number;
  triples: number;
};

export type ComparePayload = {
  item_id: string;
  run_a: string;
  run_b: string;
  scenario: string | null;
  delta: {
    base: CountsPayload;
    other: CountsPayload;
    d_entities: number;
    d_triples: number;
    quadrant: string;
  };
  rse_carryover: { fraction: string; value: number } | null;
  conformity: {
    a: { fraction: string; value: number; runs: number } | null;
    b: { fraction: string; value: number; runs: number } | null;
  };
};

export type BipartitePayload = {
  min_paragraphs: number;
  concepts: {
    label: string;
    stem: string;
    paragraphs: string[];
    members: string[];
    occurrence_count: number;
  }[];
  paragraphs: string[];
  edges: { concept: string; paragraph: string }[];
  concept_count: number;
  edge_count: number;
};

export type ApiErrorPayload = { error: string; detail: string };
