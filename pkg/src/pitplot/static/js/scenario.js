/** What-if scenario state: per-project toggles, overrides, metric, and the
 * request-sequencing discipline that keeps the rendered scenario in sync
 * with the newest acknowledged toggle set. */
export class ScenarioState {
    constructor(projectIds = []) {
        this.metric = "pi";
        this.toggles = new Map();
        this.overrides = [];
        this.reset(projectIds);
    }
    reset(projectIds) {
        this.toggles = new Map(projectIds.map((id) => [id, { excluded: false, forceSuccess: false }]));
        this.overrides = [];
    }
    get projectIds() {
        return [...this.toggles.keys()];
    }
    togglesFor(id) {
        const t = this.toggles.get(id);
        if (!t)
            throw new Error(`unknown project id: ${id}`);
        return t;
    }
    setExcluded(id, value) {
        this.togglesFor(id).excluded = value;
    }
    setForceSuccess(id, value) {
        this.togglesFor(id).forceSuccess = value;
    }
    setOverride(projectId, fieldPath, value) {
        this.overrides = this.overrides.filter((o) => o.projectId !== projectId || o.fieldPath !== fieldPath);
        this.overrides.push({ projectId, fieldPath, value });
    }
    clearOverrides() {
        this.overrides = [];
    }
    get isNeutral() {
        return (this.overrides.length === 0 &&
            [...this.toggles.values()].every((t) => !t.excluded && !t.forceSuccess));
    }
    toRequest() {
        const exclusions = [];
        const forced = [];
        for (const [id, t] of this.toggles) {
            if (t.excluded)
                exclusions.push(id);
            if (t.forceSuccess)
                forced.push(id);
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
    constructor() {
        this.issued = 0;
        this.acknowledged = 0;
    }
    next() {
        return ++this.issued;
    }
    /** Returns true iff this response is newer than any already accepted. */
    accept(seq) {
        if (seq <= this.acknowledged)
            return false;
        this.acknowledged = seq;
        return true;
    }
}
/** Debounced, sequence-checked what-if runner. */
export class WhatIfRunner {
    constructor(send, onResponse, onError = () => { }, debounceMs = 150) {
        this.send = send;
        this.onResponse = onResponse;
        this.onError = onError;
        this.debounceMs = debounceMs;
        this.sequencer = new RequestSequencer();
        this.timer = null;
    }
    trigger(state) {
        if (this.timer !== null)
            clearTimeout(this.timer);
        const req = state.toRequest();
        this.timer = setTimeout(() => void this.run(req), this.debounceMs);
    }
    /** Immediate dispatch (used by tests and initial load). */
    async run(req) {
        const seq = this.sequencer.next();
        try {
            const resp = await this.send(req);
            if (this.sequencer.accept(seq))
                this.onResponse(resp);
        }
        catch (err) {
            if (this.sequencer.accept(seq))
                this.onError(err);
        }
    }
}
