/** View state and transitions.
 *
 * The UI is a pure client of the service: every state change here is the
 * result of a service response, mutations are never applied optimistically,
 * and at most one mutation is in flight at a time. Reloading the page and
 * re-running init() against the same session reconstructs the same state.
 */
import { ApiError } from "./api.js";
export function initialState() {
    return {
        sentenceIndex: 0,
        filter: "disagreeing",
        selection: null,
        pendingRequest: false,
        session: null,
        sentences: [],
        detail: null,
        progress: null,
        error: null,
        exported: null,
    };
}
function isResolved(detail, tokenId) {
    return detail.resolutions.some((r) => r.token_id === tokenId);
}
export function unresolvedTokenIds(detail) {
    return detail.records
        .map((r) => r.token_id)
        .filter((tokenId) => !isResolved(detail, tokenId));
}
export class AdjudicationStore {
    constructor(api) {
        this.api = api;
        this.state = initialState();
        this.listeners = [];
    }
    subscribe(listener) {
        this.listeners.push(listener);
    }
    emit() {
        for (const listener of this.listeners)
            listener();
    }
    fail(error) {
        if (error instanceof ApiError) {
            this.state.error = { code: error.code, message: error.message };
        }
        else {
            this.state.error = { code: "NETWORK", message: String(error) };
        }
        this.emit();
    }
    async init() {
        try {
            this.state.session = await this.api.session();
            this.state.sentences = await this.api.sentences();
            this.state.progress = await this.api.progress();
            const firstDisagreeing = this.state.sentences.find((s) => s.record_count > 0);
            await this.gotoSentence(firstDisagreeing ? firstDisagreeing.index : 0);
        }
        catch (error) {
            this.fail(error);
        }
    }
    /** Sentence rows matching the active filter. */
    visibleSentences() {
        const { sentences, filter } = this.state;
        if (filter === "disagreeing")
            return sentences.filter((s) => s.record_count > 0);
        if (filter === "unresolved") {
            return sentences.filter((s) => s.record_count > s.resolved_count);
        }
        return sentences;
    }
    setFilter(filter) {
        this.state.filter = filter;
        this.emit();
    }
    clearError() {
        this.state.error = null;
        this.emit();
    }
    async gotoSentence(index) {
        const count = this.state.session?.sentence_count ?? 0;
        if (count === 0)
            return;
        const bounded = Math.min(Math.max(index, 0), count - 1);
        try {
            this.state.detail = await this.api.sentence(bounded);
            this.state.sentenceIndex = bounded;
            this.state.selection = null;
            this.state.error = null;
            this.emit();
        }
        catch (error) {
            this.fail(error);
        }
    }
    /** Only tokens with a disagreement record are selectable. */
    select(tokenId) {
        const detail = this.state.detail;
        if (tokenId !== null) {
            if (!detail || !detail.records.some((r) => r.token_id === tokenId))
                return;
        }
        this.state.selection = tokenId;
        this.emit();
    }
    recordFor(tokenId) {
        return this.state.detail?.records.find((r) => r.token_id === tokenId);
    }
    async refreshAfterMutation() {
        const index = this.state.sentenceIndex;
        this.state.detail = await this.api.sentence(index);
        this.state.progress = await this.api.progress();
        this.state.sentences = await this.api.sentences();
        this.state.session = await this.api.session();
    }
    async mutate(action) {
        if (this.state.pendingRequest)
            return false; // one mutation at a time
        this.state.pendingRequest = true;
        this.state.error = null;
        this.emit();
        try {
            await action();
            await this.refreshAfterMutation();
            this.state.pendingRequest = false;
            this.emit();
            return true;
        }
        catch (error) {
            this.state.pendingRequest = false;
            this.fail(error);
            return false;
        }
    }
    async submitResolution(choice, customValues, note) {
        const tokenId = this.state.selection;
        if (tokenId === null)
            return false;
        return this.mutate(() => this.api.postResolution(this.state.sentenceIndex, {
            token_id: tokenId,
            choice,
            ...(customValues ? { custom_values: customValues } : {}),
            ...(note ? { note } : {}),
        }));
    }
    async removeResolution(tokenId) {
        return this.mutate(() => this.api.deleteResolution(this.state.sentenceIndex, tokenId));
    }
    /** Jump to the next unresolved disagreement, searching forward and wrapping. */
    async nextUnresolved() {
        const detail = this.state.detail;
        if (detail) {
            const after = this.state.selection ?? 0;
            const here = unresolvedTokenIds(detail);
            const upcoming = here.find((tokenId) => tokenId > after) ?? null;
            if (upcoming !== null) {
                this.select(upcoming);
                return;
            }
        }
        const count = this.state.sentences.length;
        for (let step = 1; step <= count; step += 1) {
            const summary = this.state.sentences[(this.state.sentenceIndex + step) % count];
            if (summary.record_count > summary.resolved_count) {
                await this.gotoSentence(summary.index);
                const ids = this.state.detail ? unresolvedTokenIds(this.state.detail) : [];
                if (ids.length > 0)
                    this.select(ids[0]);
                return;
            }
        }
    }
    async exportGold(allowPartial) {
        try {
            const text = await this.api.exportGold(allowPartial);
            this.state.exported = text;
            this.state.error = null;
            this.emit();
            return text;
        }
        catch (error) {
            this.fail(error);
            return null;
        }
    }
}
