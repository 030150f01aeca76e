import { describe, expect, it } from "vitest";
import { renderGrid, renderQuestionnaire, renderRationale } from "../src/render.js";
import { parseViewState, SchemaError, ViewState } from "../src/types.js";

function view(overrides: Partial<ViewState> = {}): ViewState {
    return {
        participantId: "p",
        trialIndex: 3,
        mapsTotal: 15,
        phase: "training",
        condition: "no_rationale",
        status: "in_progress",
        score: -20,
        hunter: "A2",
        cells: [
            { cell: "A1", breeze: false, stench: false, events: [] },
            { cell: "A2", breeze: true, stench: false, events: [] },
        ],
        frontier: ["B1", "A3", "B2"],
        recommendation: "B2",
        awaitingQuestionnaire: false,
        ...overrides,
    };
}

function intoDom(html: string): HTMLElement {
    const el = document.createElement("div");
    el.innerHTML = html;
    return el;
}

describe("grid rendering", () => {
    it("fogs unvisited cells and marks percepts on visited ones", () => {
        const dom = intoDom(renderGrid(view()));
        expect(dom.querySelectorAll("td.fog").length).toBe(16 - 2 - 3);
        expect(dom.querySelector('td[data-cell="A2"] .breeze')).not.toBeNull();
        expect(dom.querySelector('td[data-cell="A1"] .breeze')).toBeNull();
        expect(dom.querySelectorAll("td.fog .marker").length).toBe(0);
    });

    it("stars exactly the recommended frontier cell", () => {
        const dom = intoDom(renderGrid(view()));
        const starred = dom.querySelectorAll("td.recommended");
        expect(starred.length).toBe(1);
        expect((starred[0] as HTMLElement).dataset.cell).toBe("B2");
    });

    it("shows no star without a recommendation", () => {
        const dom = intoDom(renderGrid(view({ recommendation: null, condition: "unassisted" })));
        expect(dom.querySelector("td.recommended")).toBeNull();
        expect(dom.querySelectorAll("td.frontier").length).toBe(3);
    });

    it("freezes the frontier once the map is over", () => {
        const dom = intoDom(renderGrid(view({ status: "won" })));
        expect(dom.querySelectorAll("td.frontier").length).toBe(0);
    });
});

describe("rationale rendering", () => {
    const rows = [
        {
            cells: ["A3", "B2"],
            pWumpus: "0.00",
            pPit: "0.33",
            pGold: "0.33",
            pNothing: "0.33",
            expectedScore: "133.33",
            starred: true,
        },
        {
            cells: ["B1"],
            pWumpus: "0.25",
            pPit: "0.25",
            pGold: "0.25",
            pNothing: "0.25",
            expectedScore: "-150.00",
            starred: false,
        },
    ];

    it("groups cells into one row and keeps server order", () => {
        const dom = intoDom(renderRationale(rows));
        const bodyRows = dom.querySelectorAll("tr");
        expect(bodyRows.length).toBe(3); // header + 2
        expect(bodyRows[1].querySelector(".cells")!.textContent).toBe("A3, B2");
        expect(bodyRows[1].classList.contains("starred")).toBe(true);
        expect(bodyRows[2].classList.contains("starred")).toBe(false);
    });

    it("renders expected scores verbatim and probabilities as percentages with raw hover", () => {
        const dom = intoDom(renderRationale(rows));
        const expected = Array.from(dom.querySelectorAll(".expected")).map((e) => e.textContent);
        expect(expected).toEqual(["133.33", "-150.00"]);
        const pct = dom.querySelectorAll("td span[title]");
        expect(pct[0].getAttribute("title")).toBe("0.33");
        expect(pct[0].textContent).toBe("33%");
    });
});

describe("questionnaire rendering", () => {
    it("offers two 9-point scales and a disabled submit", () => {
        const dom = intoDom(renderQuestionnaire(view({ status: "won" })));
        expect(dom.querySelectorAll('input[name="trust"]').length).toBe(9);
        expect(dom.querySelectorAll('input[name="selfConfidence"]').length).toBe(9);
        expect(dom.querySelector<HTMLButtonElement>("#submit-ratings")!.disabled).toBe(true);
    });
});

describe("payload validation", () => {
    it("accepts a well-formed view", () => {
        expect(parseViewState(view()).score).toBe(-20);
    });

    it("rejects structural damage outright", () => {
        expect(() => parseViewState({})).toThrow(SchemaError);
        expect(() => parseViewState(view({ status: "paused" as never }))).toThrow(SchemaError);
        expect(() =>
            parseViewState(view({ recommendation: "D4" })), // not on the frontier
        ).toThrow(SchemaError);
        expect(() =>
            parseViewState(view({ rationale: [] as never })), // empty table
        ).toThrow(SchemaError);
    });

    it("rejects a rationale outside its condition", () => {
        const bad = view({
            rationale: [
                {
                    cells: ["B1"],
                    pWumpus: "0.00",
                    pPit: "0.00",
                    pGold: "0.50",
                    pNothing: "0.50",
                    expectedScore: "250.00",
                    starred: true,
                },
            ],
        });
        expect(() => parseViewState(bad)).toThrow(SchemaError);
    });
});
