/** What-if scenario state: per-project toggles, overrides, metric, and the
 * request-sequencing discipline that keeps the rendered scenario in sync
 * with the newest acknowledged toggle set. */

import type { WhatIfRequest, WhatIfResponse } from "./types.js";

export interface ProjectToggles {
  excluded: boolean;
  forceSuccess: boolean;
}

export interface Override {
  projectId: string;
  fieldPath: string;
  value: number;
}

export class ScenarioState {
  metric = "pi";
  private toggles = new Map<string, ProjectToggles>();
  private overrides: Override[] = [];

  constructor(projectIds: string[] = []) {
    this.reset(projectIds);
  }

  reset(projectIds: string[]): void {
    this.toggles = new Map(
      projectIds.map((id) => [id, { excluded: false, forceSuccess: false }]),
    );
    this.overrides = [];
  }

  get projectIds(): string[] {
    return [...this.toggles.keys()];
  }

  togglesFor(id: string): ProjectToggles {
    const t = this.toggles.get(id);
    if (!t) throw new Error(`unknown project id: ${id}`);
    return t;
  }

  setExcluded(id: string, value: boolean): void {
    this.togglesFor(id).excluded = value;
  }

  setForceSuccess(id: string, value: boolean): void {
    this.togglesFor(id).forceSuccess = value;
  }

  setOverride(projectId: string, fieldPath: string, value: number): void {
    this.overrides = this.overrides.filter(
      (o) => o.projectId !== projectId || o.fieldPath !== fieldPath,
    );
    this.overrides.push({ projectId, fieldPath, value });
  }

  clearOverrides(): void {
    this.overrides = [];
  }

  get isNeutral(): boolean {
    return (
      this.overrides.length === 0 &&
      [...this.toggles.values()].every((t) => !t.excluded && !t.forceSuccess)
    );
  }

  toRequest(): WhatIfRequest {
    const exclusions: string[] = [];
    const forced: string[] = [];
    for (const [id, t] of this.toggles) {
      if (t.excluded) exclusions.push(id);
      if (t.forceSuccess) forced.push(id);
    }
    return {
      metric: this.metric,
      whatif: {
        exclusions,
        forced_success: forced,
        overrides: this.overrides.map((o) => ({
          project_id: o.projectId,
          field_path: o.fieldPath,
          value: o.value,
        })),
      },
    };
  }
}

/** Discards responses that arrive after a newer request was issued. */
export class RequestSequencer {
  private issued = 0;
  private acknowledged = 0;

  next(): number {
    return ++this.issued;
  }

  /** Returns true iff this response is newer than any already accepted. */
  accept(seq: number): boolean {
    if (seq <= this.acknowledged) return false;
    this.acknowledged = seq;
    return true;
  }
}

export type WhatIfHandler = (resp: WhatIfResponse) => void;

/** Debounced, sequence-checked what-if runner. */
export class WhatIfRunner {
  private sequencer = new RequestSequencer();
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private send: (req: WhatIfRequest) => Promise<WhatIfResponse>,
    private onResponse: WhatIfHandler,
    private onError: (err: unknown) => void = () => {},
    private debounceMs = 150,
  ) {}

  trigger(state: ScenarioState): void {
    if (this.timer !== null) clearTimeout(this.timer);
    const req = state.toRequest();
    this.timer = setTimeout(() => void this.run(req), this.debounceMs);
  }

  /** Immediate dispatch (used by tests and initial load). */
  async run(req: WhatIfRequest): Promise<void> {
    const seq = this.sequencer.next();
    try {
      const resp = await this.send(req);
      if (this.sequencer.accept(seq)) this.onResponse(resp);
    } catch (err) {
      if (this.sequencer.accept(seq)) this.onError(err);
    }
  }
}
