// Thin client over the session endpoints. The transport is injectable so
// tests can replay recorded wire traffic; the real app passes fetch.

import { CompletionSummary, SessionCreated, ViewState, isCompletion, parseViewState } from "./types.js";

export interface Transport {
    (method: string, path: string, body?: unknown): Promise<{ status: number; json: unknown }>;
}

export class ServerRejection extends Error {
    constructor(public status: number, public detail: unknown) {
        super(typeof detail === "string" ? detail : JSON.stringify(detail));
    }
}

export function fetchTransport(baseUrl: string): Transport {
    return async (method, path, body) => {
        const response = await fetch(baseUrl + path, {
            method,
            headers: body === undefined ? undefined : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        return { status: response.status, json: await response.json() };
    };
}

export type StateOrDone = { kind: "state"; view: ViewState } | { kind: "done"; summary: CompletionSummary };

function intoStateOrDone(status: number, payload: unknown): StateOrDone {
    if (status >= 400) throw new ServerRejection(status, (payload as { detail?: unknown })?.detail ?? payload);
    if (isCompletion(payload)) return { kind: "done", summary: payload };
    return { kind: "state", view: parseViewState(payload) };
}

export class ApiClient {
    private token: string | null = null;
    private inFlight = false;

    constructor(private transport: Transport) {}

    get busy(): boolean {
        return this.inFlight;
    }

    // One request at a time: a second call while one is in flight is a
    // programming error upstream (the UI must disable itself).
    private async exclusive<T>(work: () => Promise<T>): Promise<T> {
        if (this.inFlight) throw new Error("request already in flight");
        this.inFlight = true;
        try {
            return await work();
        } finally {
            this.inFlight = false;
        }
    }

    async createSession(participantId: string): Promise<SessionCreated> {
        return this.exclusive(async () => {
            const { status, json } = await this.transport("POST", "/sessions", { participantId });
            if (status !== 201) throw new ServerRejection(status, (json as { detail?: unknown })?.detail);
            const created = json as SessionCreated;
            this.token = created.token;
            return created;
        });
    }

    async getState(): Promise<StateOrDone> {
        return this.exclusive(async () => {
            const { status, json } = await this.transport("GET", `/sessions/${this.token}/state`);
            return intoStateOrDone(status, json);
        });
    }

    async move(cell: string): Promise<StateOrDone> {
        return this.exclusive(async () => {
            const { status, json } = await this.transport("POST", `/sessions/${this.token}/move`, { cell });
            return intoStateOrDone(status, json);
        });
    }

    async submitQuestionnaire(trust: number, selfConfidence: number): Promise<StateOrDone> {
        return this.exclusive(async () => {
            const { status, json } = await this.transport(
                "POST",
                `/sessions/${this.token}/questionnaire`,
                { trust, selfConfidence },
            );
            return intoStateOrDone(status, json);
        });
    }
}
