import { ApiError, type ApiClient } from "./api.js";
import type { Bucket, Candidate, DecodeOptions, TokenInfo } from "./types.js";

export interface TokenView {
  surface: string;
  tokenClass: string;
  selected: boolean;
}

export interface HistoryEntry {
  /** Working name after this edit was accepted. */
  name: string;
  bucket: Bucket;
  spans: [number, number][];
  /** Fragment surfaces spliced in, one string per span. */
  fragments: string[];
  /** Token surfaces of the name the edit was applied to. */
  sourceTokens: string[];
}

/**
 * State machine behind the editor. Selection is a set of token indices;
 * maximal selected runs are the mask spans, so adjacency violations are
 * unrepresentable: touching selections merge into one span.
 */
export class EditSession {
  readonly initialName: string;
  workingName: string;
  tokens: TokenView[] = [];
  targetBucket: Bucket = "high";
  candidates: Candidate[] = [];
  history: HistoryEntry[] = [];
  /** Inline message for span problems or transport failures; null when clean. */
  error: string | null = null;
  pending = false;
  private requestSerial = 0;

  private constructor(
    private readonly client: ApiClient,
    name: string,
  ) {
    this.initialName = name;
    this.workingName = name;
  }

  static async start(client: ApiClient, name: string): Promise<EditSession> {
    const session = new EditSession(client, name);
    await session.refreshTokens();
    return session;
  }

  private async refreshTokens(): Promise<void> {
    const body = await this.client.tokenize(this.workingName);
    this.tokens = body.tokens.map((t: TokenInfo) => ({
      surface: t.surface,
      tokenClass: t.class,
      selected: false,
    }));
  }

  /** Maximal runs of selected tokens as (start, length) spans. */
  spans(): [number, number][] {
    const out: [number, number][] = [];
    let start = -1;
    this.tokens.forEach((t, i) => {
      if (t.selected && start < 0) start = i;
      if (!t.selected && start >= 0) {
        out.push([start, i - start]);
        start = -1;
      }
    });
    if (start >= 0) out.push([start, this.tokens.length - start]);
    return out;
  }

  get canRequest(): boolean {
    return this.spans().length > 0 && !this.pending;
  }

  selectSpan(indices: number[]): void {
    for (const i of indices) {
      const token = this.tokens[i];
      if (!token) throw new RangeError(`token index ${i} out of range`);
      token.selected = !token.selected;
    }
    this.error = null;
  }

  setBucket(bucket: Bucket): void {
    this.targetBucket = bucket;
  }

  async requestCandidates(decode?: DecodeOptions): Promise<void> {
    const spans = this.spans();
    if (spans.length === 0) {
      this.error = "select at least one token first";
      return;
    }
    const serial = ++this.requestSerial;
    this.pending = true;
    try {
      const body = await this.client.infill({
        name: this.workingName,
        spans,
        targetBucket: this.targetBucket,
        decode,
      });
      if (serial !== this.requestSerial) return; // superseded by a newer click
      this.candidates = body.candidates;
      this.error = null;
    } catch (err) {
      if (serial !== this.requestSerial) return;
      this.candidates = [];
      this.error =
        err instanceof ApiError
          ? `request rejected (${err.status}): ${err.detail}`
          : "service unreachable — retry";
    } finally {
      if (serial === this.requestSerial) this.pending = false;
    }
  }

  async acceptCandidate(index: number): Promise<void> {
    const candidate = this.candidates[index];
    if (!candidate) throw new RangeError(`candidate index ${index} out of range`);
    if (candidate.validity !== "Valid" || candidate.name === null) {
      throw new Error("only Valid candidates can be accepted");
    }
    this.history.push({
      name: candidate.name,
      bucket: this.targetBucket,
      spans: this.spans(),
      fragments: candidate.fragments.map((f) => f.join("")),
      sourceTokens: this.tokens.map((t) => t.surface),
    });
    this.workingName = candidate.name;
    this.candidates = [];
    await this.refreshTokens();
  }

  async undo(): Promise<void> {
    if (this.history.length === 0) return;
    this.history.pop();
    const last = this.history[this.history.length - 1];
    this.workingName = last ? last.name : this.initialName;
    this.candidates = [];
    await this.refreshTokens();
  }
}

/** Splice one edit's fragments into its recorded source tokens. */
export function applyEntry(entry: HistoryEntry): string {
  const out: string[] = [];
  let cursor = 0;
  entry.spans.forEach(([start, length], i) => {
    out.push(...entry.sourceTokens.slice(cursor, start));
    out.push(entry.fragments[i] ?? "");
    cursor = start + length;
  });
  out.push(...entry.sourceTokens.slice(cursor));
  return out.join("");
}

/**
 * Replay an edit history from the initial name. Each step must reproduce
 * the name it recorded; the last one is the session's working name.
 */
export function replayHistory(initialName: string, history: HistoryEntry[]): string {
  let name = initialName;
  for (const entry of history) {
    if (entry.sourceTokens.join("") !== name) {
      throw new Error(`history broken: edit recorded against ${entry.sourceTokens.join("")}, expected ${name}`);
    }
    name = applyEntry(entry);
    if (name !== entry.name) {
      throw new Error(`history broken: replay gave ${name}, recorded ${entry.name}`);
    }
  }
  return name;
}
