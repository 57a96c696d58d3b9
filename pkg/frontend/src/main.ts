import { createClient } from "./api.js";
import { EditorApp } from "./ui.js";

const base = (window as any).MOLEDIT_BASE ?? "http://127.0.0.1:8642";
const client = createClient(base);
const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
const app = new EditorApp(client, root);

const form = document.getElementById("load-form") as HTMLFormElement;
const input = document.getElementById("name-input") as HTMLInputElement;
form.onsubmit = (event) => {
  event.preventDefault();
  void app.load(input.value.trim());
};
void app.load(input.value.trim());
