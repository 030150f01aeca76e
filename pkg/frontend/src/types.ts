// Wire types for the session service. The server is the source of truth;
// everything here mirrors its JSON payloads exactly.

export interface CellView {
    cell: string;            // "A1" .. "D4"
    breeze: boolean;
    stench: boolean;
    events: string[];        // subset of "pit" | "gold" | "wumpus"
}

export interface RationaleRowWire {
    cells: string[];
    pWumpus: string;         // 2-decimal strings, rendered verbatim
    pPit: string;
    pGold: string;
    pNothing: string;
    expectedScore: string;
    starred: boolean;
}

export interface ViewState {
    participantId: string;
    trialIndex: number;
    mapsTotal: number;
    phase: "training" | "test";
    condition: "rationale" | "no_rationale" | "unassisted";
    status: "in_progress" | "won" | "dead";
    score: number;
    hunter: string;
    cells: CellView[];
    frontier: string[];
    recommendation: string | null;
    awaitingQuestionnaire: boolean;
    rationale?: RationaleRowWire[];
}

export interface CompletionSummary {
    participantId: string;
    complete: true;
    maps: { mapId: string; condition: string; finalScore: number; acceptanceRate: number | null }[];
    totalScore: number;
}

export interface SessionCreated {
    token: string;
    plan: {
        participantId: string;
        conditionOrder: string[];
        mapsTotal: number;
        trainingMaps: number;
        testMaps: number;
    };
}

export class SchemaError extends Error {}

function fail(msg: string): never {
    throw new SchemaError(`bad server payload: ${msg}`);
}

const CELL_RE = /^[A-Z][0-9]+$/;

// The grid renderer trusts these payloads completely, so reject anything
// malformed outright rather than risking a silent partial render.
export function parseViewState(payload: unknown): ViewState {
    const v = payload as ViewState;
    if (typeof v !== "object" || v === null) fail("not an object");
    if (!Number.isInteger(v.trialIndex) || !Number.isInteger(v.mapsTotal)) fail("trial counters");
    if (!["rationale", "no_rationale", "unassisted"].includes(v.condition)) fail("condition");
    if (!["in_progress", "won", "dead"].includes(v.status)) fail("status");
    if (typeof v.score !== "number") fail("score");
    if (!Array.isArray(v.cells)) fail("cells");
    for (const c of v.cells) {
        if (!CELL_RE.test(c.cell)) fail(`cell label ${c.cell}`);
        if (typeof c.breeze !== "boolean" || typeof c.stench !== "boolean") fail("percepts");
        if (!Array.isArray(c.events)) fail("events");
    }
    if (!Array.isArray(v.frontier) || v.frontier.some((f) => !CELL_RE.test(f))) fail("frontier");
    if (v.recommendation !== null && typeof v.recommendation !== "string") fail("recommendation");
    if (v.recommendation !== null && !v.frontier.includes(v.recommendation)) {
        fail("recommendation not on the frontier");
    }
    if (v.rationale !== undefined) {
        if (v.condition !== "rationale") fail("rationale outside its condition");
        if (!Array.isArray(v.rationale) || v.rationale.length === 0) fail("rationale rows");
        for (const row of v.rationale) {
            if (!Array.isArray(row.cells) || row.cells.length === 0) fail("rationale row cells");
            for (const key of ["pWumpus", "pPit", "pGold", "pNothing", "expectedScore"] as const) {
                if (typeof row[key] !== "string") fail(`rationale ${key}`);
            }
            if (typeof row.starred !== "boolean") fail("rationale star");
        }
        if (v.rationale.filter((r) => r.starred).length !== 1) fail("star count");
    }
    if (typeof v.awaitingQuestionnaire !== "boolean") fail("awaitingQuestionnaire");
    return v;
}

export function isCompletion(payload: unknown): payload is CompletionSummary {
    return typeof payload === "object" && payload !== null && (payload as CompletionSummary).complete === true;
}
