import { type ApiClient } from "./api.js";
import { CLASS_COLORS } from "./render.js";
import { EditSession } from "./session.js";
import type { Bucket } from "./types.js";

/** DOM layer: renders the session into a container and wires events. */
export class EditorApp {
  private session: EditSession | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async load(name: string): Promise<void> {
    this.session = await EditSession.start(this.client, name);
    this.render();
  }

  private render(): void {
    const s = this.session;
    this.root.replaceChildren();
    if (!s) return;

    const title = document.createElement("h2");
    title.textContent = s.workingName;
    this.root.appendChild(title);

    const chipRow = document.createElement("div");
    chipRow.className = "chips";
    s.tokens.forEach((t, i) => {
      const chip = document.createElement("button");
      chip.textContent = t.surface;
      chip.title = t.tokenClass;
      chip.style.borderColor = CLASS_COLORS[t.tokenClass] ?? "#333";
      chip.className = t.selected ? "chip selected" : "chip";
      chip.onclick = () => {
        s.selectSpan([i]);
        this.render();
      };
      chipRow.appendChild(chip);
    });
    this.root.appendChild(chipRow);

    const controls = document.createElement("div");
    const bucketSelect = document.createElement("select");
    for (const b of ["low", "med", "high"] as Bucket[]) {
      const option = document.createElement("option");
      option.value = b;
      option.textContent = `<${b}>`;
      option.selected = b === s.targetBucket;
      bucketSelect.appendChild(option);
    }
    bucketSelect.onchange = () => s.setBucket(bucketSelect.value as Bucket);
    controls.appendChild(bucketSelect);

    const request = document.createElement("button");
    request.textContent = s.pending ? "requesting…" : "request candidates";
    request.disabled = !s.canRequest;
    request.onclick = async () => {
      await s.requestCandidates({ mode: "sample", temperature: 1.0, k: 5, seed: 7 });
      this.render();
    };
    controls.appendChild(request);

    const undo = document.createElement("button");
    undo.textContent = "undo";
    undo.disabled = s.history.length === 0;
    undo.onclick = async () => {
      await s.undo();
      this.render();
    };
    controls.appendChild(undo);
    this.root.appendChild(controls);

    if (s.error) {
      const banner = document.createElement("p");
      banner.className = "error";
      banner.textContent = s.error;
      this.root.appendChild(banner);
    }

    const list = document.createElement("ol");
    s.candidates.forEach((c, i) => {
      const item = document.createElement("li");
      if (c.validity === "Identity") item.className = "identity";
      const delta =
        c.propertyAfter === null
          ? ""
          : ` ${c.propertyBefore.toFixed(2)} → ${c.propertyAfter.toFixed(2)}` +
            ` ${c.bucketAfter}`;
      item.textContent = `[${c.validity}] ${c.name ?? "—"}${delta} `;
      if (c.validity === "Valid") {
        const accept = document.createElement("button");
        accept.textContent = "accept";
        accept.onclick = async () => {
          await s.acceptCandidate(i);
          this.render();
        };
        item.appendChild(accept);
      }
      list.appendChild(item);
    });
    this.root.appendChild(list);

    const historyNote = document.createElement("p");
    historyNote.textContent = `${s.history.length} accepted edit(s)`;
    this.root.appendChild(historyNote);
  }
}
