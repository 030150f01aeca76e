// Shared test plumbing: a transport that replays recorded wire traffic and
// asserts the app sends exactly the recorded requests, in order.

import { expect } from "vitest";
import { Transport } from "../src/api.js";

export interface Exchange {
    method: string;
    path: string;
    body: unknown;
    status: number;
    response: unknown;
}

export class ReplayTransport {
    public cursor = 0;
    public requestCount = 0;

    constructor(private script: Exchange[]) {}

    get exhausted(): boolean {
        return this.cursor >= this.script.length;
    }

    get last(): Exchange {
        return this.script[this.cursor - 1];
    }

    transport: Transport = async (method, path, body) => {
        expect(this.exhausted, `unexpected extra request ${method} ${path}`).toBe(false);
        const expected = this.script[this.cursor++];
        this.requestCount++;
        expect(`${method} ${path}`).toBe(`${expected.method} ${expected.path}`);
        expect(body ?? null).toEqual(expected.body ?? null);
        return { status: expected.status, json: expected.response };
    };
}

export async function settle(): Promise<void> {
    // drain the microtask queue a few times so async click handlers finish
    for (let i = 0; i < 10; i++) {
        await new Promise((resolve) => setTimeout(resolve, 0));
    }
}

export function mount(): HTMLElement {
    document.body.innerHTML = '<div id="app"></div>';
    return document.getElementById("app") as HTMLElement;
}

export function click(el: Element): void {
    el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

export function chooseRating(root: HTMLElement, scale: string, value: number): void {
    const input = root.querySelector<HTMLInputElement>(
        `input[name="${scale}"][value="${value}"]`,
    );
    expect(input, `no ${scale} radio for ${value}`).not.toBeNull();
    input!.checked = true;
    input!.dispatchEvent(new Event("change", { bubbles: true }));
}
