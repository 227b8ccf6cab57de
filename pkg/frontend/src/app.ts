/** Verifier console wiring: one screen, server-authoritative state.
 *
 * Every action is an API call followed by a refetch; no state transition
 * is rendered optimistically. While a run is executing the item list is
 * polled every 2 seconds.
 */

import { ApiClient, ApiError } from './api.js';
import { bipartiteLayout, entailmentBars, quadrantArrow } from './charts.js';
import {
  renderBfEditor,
  renderBipartiteSvg,
  renderEntailmentBarsSvg,
  renderError,
  renderQuadrantSvg,
  renderQueue,
  renderRunDetail,
} from './render.js';
import type { RunPayload } from './types.js';
import { buildItemQueue, buildRunDetail } from './viewmodel.js';

const POLL_INTERVAL_MS = 2000;

type State = {
  selectedItem: string | null;
  currentRun: RunPayload | null;
  lastAction: (() => Promise<void>) | null;
  polling: number | null;
};

export class App {
  private state: State = {
    selectedItem: null,
    currentRun: null,
    lastAction: null,
    polling: null,
  };

  constructor(
    private api: ApiClient,
    private root: Document = document,
  ) {}

  private el(id: string): HTMLElement {
    const node = this.root.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
  }

  async start(): Promise<void> {
    this.root.addEventListener('click', (event) => this.onClick(event));
    await this.refreshQueue();
    await this.refreshCharts();
  }

  private async guarded(action: () => Promise<void>): Promise<void> {
    this.state.lastAction = action;
    try {
      this.el('errors').innerHTML = '';
      await action();
    } catch (error) {
      if (error instanceof ApiError) {
        this.el('errors').innerHTML = renderError(error.serverError, error.detail);
      } else {
        this.el('errors').innerHTML = renderError('Error', String(error));
      }
    }
  }

  private async refreshQueue(): Promise<void> {
    const { items } = await this.api.listItems();
    this.el('queue').innerHTML = renderQueue(
      buildItemQueue(items),
      this.state.selectedItem,
    );
  }

  private async refreshRun(runId: string): Promise<void> {
    const run = await this.api.getRun(runId);
    this.state.currentRun = run;
    this.el('run-detail').innerHTML = renderRunDetail(buildRunDetail(run));
  }

  private async refreshBfEditor(itemId: string): Promise<void> {
    const [{ facts }, { suggestions }, item] = await Promise.all([
      this.api.listBfs(),
      this.api.suggestBfs(itemId),
      this.api.getItem(itemId),
    ]);
    this.el('bf-editor').innerHTML = renderBfEditor(
      facts,
      suggestions,
      [],
      item.bf_version,
    );
  }

  private async refreshCharts(): Promise<void> {
    const { items } = await this.api.listItems();
    const runs: RunPayload[] = [];
    for (const item of items) {
      const detail = await this.api.getItem(item.id);
      const latest = detail.runs?.at(-1);
      if (latest) runs.push(await this.api.getRun(latest.run_id));
    }
    this.el('entailment-chart').innerHTML = renderEntailmentBarsSvg(
      entailmentBars(runs),
    );
    const bipartite = await this.api.fetchBipartite('bfa', 2);
    this.el('bipartite-chart').innerHTML = renderBipartiteSvg(
      bipartiteLayout(bipartite),
    );
  }

  private startPolling(): void {
    if (this.state.polling !== null) return;
    this.state.polling = setInterval(async () => {
      await this.refreshQueue();
    }, POLL_INTERVAL_MS) as unknown as number;
  }

  private stopPolling(): void {
    if (this.state.polling !== null) {
      clearInterval(this.state.polling);
      this.state.polling = null;
    }
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    const itemRow = target.closest<HTMLElement>('.queue-row');
    if (itemRow?.dataset.item) {
      const itemId = itemRow.dataset.item;
      void this.guarded(async () => {
        this.state.selectedItem = itemId;
        await this.refreshQueue();
        await this.refreshBfEditor(itemId);
      });
      return;
    }
    if (target.id === 'retry' && this.state.lastAction) {
      void this.guarded(this.state.lastAction);
      return;
    }
    if (target.id === 'run-item' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      void this.guarded(async () => {
        this.startPolling();
        try {
          const run = await this.api.startRun(itemId, 0, 10);
          await this.refreshRun(run.run_id);
        } finally {
          this.stopPolling();
        }
        await this.refreshQueue();
        await this.refreshCharts();
      });
      return;
    }
    if (target.id === 'run-with-bfs' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      void this.guarded(async () => {
        const item = await this.api.getItem(itemId);
        this.startPolling();
        try {
          const run = await this.api.startRun(itemId, item.bf_version, 10);
          await this.refreshRun(run.run_id);
        } finally {
          this.stopPolling();
        }
        await this.refreshQueue();
        await this.refreshCharts();
      });
      return;
    }
    if (target.classList.contains('bypass')) {
      const runId = target.dataset.run!;
      const ordinal = Number(target.dataset.fact);
      const category = window.prompt(
        'bypass category (auxiliary_entity, namespace_scoping, cross_namespace, other)',
        'auxiliary_entity',
      );
      if (!category) return;
      const note = window.prompt('reviewer note (required for other)', '') ?? '';
      void this.guarded(async () => {
        await this.api.bypassFact(runId, ordinal, category, note);
        await this.refreshRun(runId);
      });
      return;
    }
    if (target.classList.contains('accept')) {
      const runId = target.dataset.run!;
      const itemId = target.dataset.item!;
      void this.guarded(async () => {
        await this.api.acceptItem(itemId, runId);
        await this.refreshRun(runId);
        await this.refreshQueue();
      });
      return;
    }
    if (target.id === 'add-bf' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      void this.guarded(async () => {
        const text = (this.el('new-bf-text') as HTMLInputElement).value;
        const terms = (this.el('new-bf-terms') as HTMLInputElement).value
          .split(',')
          .map((t) => t.trim())
          .filter(Boolean);
        await this.api.addBf(text, terms, itemId);
        await this.refreshBfEditor(itemId);
      });
      return;
    }
    if (target.id === 'assign-bfs' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      const baseVersion = Number(target.dataset.version);
      void this.guarded(async () => {
        const checked = Array.from(
          this.root.querySelectorAll<HTMLInputElement>('.bf-check:checked'),
        ).map((box) => box.value);
        await this.api.assignBfs(itemId, checked, baseVersion);
        await this.refreshBfEditor(itemId);
        await this.refreshQueue();
      });
      return;
    }
    if (target.id === 'split-item' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      const raw = window.prompt('sub-paragraphs, separated by ---');
      if (!raw) return;
      const parts = raw.split('---').map((p) => p.trim()).filter(Boolean);
      const partition = window.confirm('pure partition of the original text?');
      void this.guarded(async () => {
        await this.api.splitItem(itemId, parts, partition);
        this.state.selectedItem = null;
        await this.refreshQueue();
      });
      return;
    }
    if (target.id === 'compare-runs' && this.state.selectedItem) {
      const itemId = this.state.selectedItem;
      void this.guarded(async () => {
        const item = await this.api.getItem(itemId);
        const runs = item.runs ?? [];
        if (runs.length < 2) return;
        const compare = await this.api.compareRuns(
          itemId,
          runs[0]!.run_id,
          runs.at(-1)!.run_id,
        );
        this.el('quadrant-chart').innerHTML = renderQuadrantSvg([
          quadrantArrow(compare),
        ]);
      });
    }
  }
}

export function mount(baseUrl = ''): App {
  const app = new App(new ApiClient(baseUrl));
  void app.start();
  return app;
}
