// Controller: owns the screen, funnels every user action into exactly one
// server request, and re-renders from the response. The server is the
// source of truth; there is no polling and no local game logic.

import { ApiClient, ServerRejection, StateOrDone } from "./api.js";
import {
    renderCompletion,
    renderError,
    renderGrid,
    renderMessage,
    renderQuestionnaire,
    renderRationale,
    renderStatus,
} from "./render.js";
import { SchemaError, ViewState } from "./types.js";

export class GameApp {
    private view: ViewState | null = null;
    private notice = "";

    constructor(private root: HTMLElement, private api: ApiClient) {
        this.root.addEventListener("click", (ev) => this.onClick(ev));
        this.root.addEventListener("change", () => this.syncQuestionnaireButton());
    }

    async start(participantId: string): Promise<void> {
        try {
            await this.api.createSession(participantId);
            this.apply(await this.api.getState());
        } catch (err) {
            this.renderBlockingError(err);
        }
    }

    private apply(result: StateOrDone): void {
        if (result.kind === "done") {
            this.root.innerHTML = renderCompletion(result.summary);
            return;
        }
        this.view = result.view;
        this.render();
    }

    private render(): void {
        const view = this.view;
        if (!view) return;
        const parts = [renderStatus(view), renderMessage(this.notice), renderGrid(view)];
        if (view.rationale) {
            parts.push(renderRationale(view.rationale));
        }
        if (view.awaitingQuestionnaire) {
            parts.push(renderQuestionnaire(view));
        }
        this.root.innerHTML = `<div class="game${this.api.busy ? " busy" : ""}">${parts.join("")}</div>`;
    }

    private onClick(ev: Event): void {
        const target = ev.target as HTMLElement;
        const cellEl = target.closest<HTMLElement>("td.frontier");
        if (cellEl) {
            void this.moveTo(cellEl.dataset.cell as string);
            return;
        }
        if (target.closest("#submit-ratings")) {
            void this.sendRatings();
        }
    }

    private async moveTo(cell: string): Promise<void> {
        // one request per action: clicks while busy or mid-questionnaire drop
        if (this.api.busy || !this.view || this.view.awaitingQuestionnaire) return;
        this.notice = "";
        this.render();
        try {
            this.apply(await this.api.move(cell));
        } catch (err) {
            await this.recover(err);
        }
    }

    private selectedRating(scale: string): number | null {
        const checked = this.root.querySelector<HTMLInputElement>(
            `input[name="${scale}"]:checked`,
        );
        return checked ? Number(checked.value) : null;
    }

    private syncQuestionnaireButton(): void {
        const button = this.root.querySelector<HTMLButtonElement>("#submit-ratings");
        if (!button) return;
        button.disabled =
            this.selectedRating("trust") === null || this.selectedRating("selfConfidence") === null;
    }

    private async sendRatings(): Promise<void> {
        if (this.api.busy) return;
        const trust = this.selectedRating("trust");
        const selfConfidence = this.selectedRating("selfConfidence");
        if (trust === null || selfConfidence === null) return; // both scales are required
        this.notice = "";
        try {
            this.apply(await this.api.submitQuestionnaire(trust, selfConfidence));
        } catch (err) {
            await this.recover(err);
        }
    }

    private async recover(err: unknown): Promise<void> {
        // server said no: surface the message and re-sync from its state
        if (err instanceof ServerRejection) {
            this.notice = err.message;
            try {
                this.apply(await this.api.getState());
            } catch (refetchErr) {
                this.renderBlockingError(refetchErr);
            }
            return;
        }
        this.renderBlockingError(err);
    }

    private renderBlockingError(err: unknown): void {
        const message =
            err instanceof SchemaError
                ? err.message
                : err instanceof Error
                  ? err.message
                  : String(err);
        this.root.innerHTML = renderError(message);
    }
}
