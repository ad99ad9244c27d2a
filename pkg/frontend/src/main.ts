import { Client } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

// same-origin by default; point PREFPCP_URL at another service if needed
const base = (window as { PREFPCP_URL?: string }).PREFPCP_URL ?? "";
new App(root, new Client(base));
