// Pure HTML renderers: ViewState in, markup out. No client-side game
// knowledge lives here; everything drawn comes from the payload.

import { CompletionSummary, RationaleRowWire, ViewState } from "./types.js";

export const COLS = ["A", "B", "C", "D"];

function escapeHtml(s: string): string {
    return s.replace(/[&<>"']/g, (ch) => `&#${ch.charCodeAt(0)};`);
}

function cellMarkers(view: ViewState, label: string): string {
    const cell = view.cells.find((c) => c.cell === label);
    if (!cell) return "";
    const marks: string[] = [];
    if (cell.events.includes("gold")) marks.push('<span class="marker gold" title="gold">🏆</span>');
    if (cell.events.includes("wumpus")) marks.push('<span class="marker wumpus" title="wumpus">👹</span>');
    if (cell.events.includes("pit")) marks.push('<span class="marker pit" title="fell into a pit">🕳</span>');
    if (cell.breeze) marks.push('<span class="marker breeze" title="breeze: a pit is adjacent">〰</span>');
    if (cell.stench) marks.push('<span class="marker stench" title="stench: the wumpus is adjacent">☣</span>');
    return marks.join("");
}

export function renderGrid(view: ViewState): string {
    const visited = new Set(view.cells.map((c) => c.cell));
    const frontier = new Set(view.frontier);
    const rows: string[] = [];
    for (let r = 4; r >= 1; r--) {
        const cells: string[] = [];
        for (const col of COLS) {
            const label = `${col}${r}`;
            const classes = ["cell"];
            let inner = "";
            if (visited.has(label)) {
                classes.push("visited");
                inner = cellMarkers(view, label);
                if (view.hunter === label) classes.push("hunter");
            } else if (frontier.has(label) && view.status === "in_progress") {
                classes.push("frontier");
                if (view.recommendation === label) {
                    classes.push("recommended");
                    inner = '<span class="star" title="recommended">★</span>';
                }
            } else {
                classes.push("fog");
            }
            cells.push(
                `<td class="${classes.join(" ")}" data-cell="${label}">` +
                    `<span class="coord">${label}</span>${inner}</td>`,
            );
        }
        rows.push(`<tr><th>${r}</th>${cells.join("")}</tr>`);
    }
    const header = COLS.map((c) => `<th>${c}</th>`).join("");
    return `<table class="grid"><tr><th></th>${header}</tr>${rows.join("")}</table>`;
}

function percent(raw: string): string {
    return `<span title="${raw}">${Math.round(parseFloat(raw) * 100)}%</span>`;
}

export function renderRationale(rows: RationaleRowWire[]): string {
    // rows arrive sorted by expected score; render them exactly as served
    const body = rows
        .map(
            (row) => `<tr class="${row.starred ? "starred" : ""}">
<td class="star-col">${row.starred ? "★" : ""}</td>
<td class="cells">${row.cells.join(", ")}</td>
<td>${percent(row.pGold)}</td>
<td>${percent(row.pPit)}</td>
<td>${percent(row.pWumpus)}</td>
<td>${percent(row.pNothing)}</td>
<td class="expected">${row.expectedScore}</td>
</tr>`,
        )
        .join("");
    return `<table class="rationale">
<caption>Where could the hunter go next?</caption>
<tr><th></th><th>Locations</th><th>Find gold</th><th>Fall into pit</th>
<th>Meet wumpus</th><th>Nothing</th><th>Expected score</th></tr>
${body}</table>`;
}

export function renderStatus(view: ViewState): string {
    const condition = {
        rationale: "assistant with rationale",
        no_rationale: "assistant",
        unassisted: "no assistant",
    }[view.condition];
    const status = { in_progress: "", won: " — gold found!", dead: " — eaten by the wumpus" }[
        view.status
    ];
    return `<div class="status">
<span>Map ${view.trialIndex + 1} of ${view.mapsTotal} (${view.phase}, ${condition})</span>
<span class="score">Score: ${view.score}${status}</span>
</div>`;
}

function likertRow(name: string, question: string): string {
    const points = Array.from({ length: 9 }, (_, i) => i + 1)
        .map(
            (v) => `<label class="likert-point">
<input type="radio" name="${name}" value="${v}"><span>${v}</span></label>`,
        )
        .join("");
    return `<fieldset class="likert" data-scale="${name}">
<legend>${question}</legend>
<span class="anchor">not at all</span>${points}<span class="anchor">extremely</span>
</fieldset>`;
}

export function renderQuestionnaire(view: ViewState): string {
    const outcome = view.status === "won" ? "You found the gold!" : "The wumpus got you.";
    return `<div class="questionnaire" role="dialog">
<h2>${outcome} Map score: ${view.score}</h2>
<p>Before the next map, please answer both questions.</p>
${likertRow("trust", "How much do you trust the intelligent assistant?")}
${likertRow("selfConfidence", "How confident are you in completing tasks without the intelligent assistant?")}
<button id="submit-ratings" disabled>Continue</button>
</div>`;
}

export function renderCompletion(summary: CompletionSummary): string {
    const rows = summary.maps
        .map(
            (m, i) =>
                `<tr><td>${i + 1}</td><td>${escapeHtml(m.mapId)}</td>` +
                `<td>${escapeHtml(m.condition)}</td><td>${m.finalScore}</td></tr>`,
        )
        .join("");
    return `<div class="completion">
<h2>Session complete — thank you!</h2>
<p>Total score: ${summary.totalScore}</p>
<table class="summary"><tr><th>#</th><th>Map</th><th>Condition</th><th>Score</th></tr>${rows}</table>
</div>`;
}

export function renderError(message: string): string {
    return `<div class="blocking-error" role="alert">
<h2>Something went wrong</h2>
<p>${escapeHtml(message)}</p>
<p>Please call the experimenter.</p>
</div>`;
}

export function renderMessage(message: string): string {
    return message ? `<div class="notice">${escapeHtml(message)}</div>` : "";
}
