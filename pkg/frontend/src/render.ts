import type { EditSession } from "./session.js";

/** Chip color per token class (hydrocarbon-ish groups vs structure tokens). */
export const CLASS_COLORS: Record<string, string> = {
  Group: "#1f77b4",
  Locant: "#7f7f7f",
  Multiplier: "#2ca02c",
  Stereo: "#9467bd",
  RingLocant: "#8c564b",
  Element: "#e377c2",
  Charge: "#d62728",
  Punctuation: "#bcbd22",
  Special: "#17becf",
};

/**
 * Pure text projection of a session, used both for snapshot tests and as
 * the source of truth for what the DOM layer shows.
 */
export function renderText(session: EditSession): string {
  const lines: string[] = [];
  lines.push(`molecule: ${session.workingName}`);
  const chips = session.tokens
    .map((t, i) => {
      const mark = t.selected ? "*" : " ";
      return `${mark}${i}:${t.surface}(${t.tokenClass})`;
    })
    .join(" ");
  lines.push(`tokens: ${chips}`);
  lines.push(
    `spans: ${JSON.stringify(session.spans())}  target: <${session.targetBucket}>` +
      `  request ${session.canRequest ? "enabled" : "disabled"}`,
  );
  if (session.error) lines.push(`error: ${session.error}`);
  for (const [i, c] of session.candidates.entries()) {
    const delta =
      c.propertyAfter === null
        ? ""
        : `  ${c.propertyBefore.toFixed(2)} -> ${c.propertyAfter.toFixed(2)}` +
          ` [${c.bucketAfter}]`;
    const grey = c.validity === "Identity" ? " (unchanged)" : "";
    lines.push(`candidate ${i}: ${c.validity} ${c.name ?? "—"}${delta}${grey}`);
  }
  lines.push(`history: ${session.history.length} accepted edit(s)`);
  return lines.join("\n");
}
