import { ApiClient, fetchTransport } from "./api.js";
import { GameApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const participantId =
    params.get("participant") || window.prompt("Participant id?") || `p-${Date.now()}`;
const baseUrl = params.get("api") || "";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const app = new GameApp(root, new ApiClient(fetchTransport(baseUrl)));
void app.start(participantId);
