import { ElenchusClient } from "./client.js";
import { SessionConsole } from "./store.js";
import { renderApp } from "./view.js";

const params = new URLSearchParams(window.location.search);
const apiUrl = params.get("api") ?? "http://127.0.0.1:8040";

const client = new ElenchusClient(apiUrl);
const session = new SessionConsole(client);

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");
renderApp(root, session, client);
