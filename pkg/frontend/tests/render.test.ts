import { describe, expect, it } from "vitest";

import type { ApiClient } from "../src/api.js";
import { CLASS_COLORS, renderText } from "../src/render.js";
import { EditSession } from "../src/session.js";

const client: ApiClient = {
  tokenize: async (name) => ({
    tokens: name.split(/([-])/).filter(Boolean).map((surface, index) => ({
      surface,
      class: surface === "-" ? "Punctuation" : "Group",
      index,
    })),
    hasUnknown: false,
  }),
  infill: async () => ({
    candidates: [
      {
        name: "aa-zz",
        fragments: [["zz"]],
        validity: "Valid",
        propertyBefore: 1.0,
        propertyAfter: 5.25,
        bucketAfter: "<high>",
      },
      {
        name: "aa-bb",
        fragments: [["bb"]],
        validity: "Identity",
        propertyBefore: 1.0,
        propertyAfter: 1.0,
        bucketAfter: "<med>",
      },
    ],
  }),
  vocab: async () => ({ version: "v", size: 520, contentTokens: 414, classCounts: {} }),
  health: async () => ({ status: "ok" }),
};

describe("renderText", () => {
  it("is a stable pure projection of session state", async () => {
    const session = await EditSession.start(client, "aa-bb");
    session.selectSpan([2]);
    await session.requestCandidates();
    const snapshot = renderText(session);
    expect(snapshot).toMatchInlineSnapshot(`
      "molecule: aa-bb
      tokens:  0:aa(Group)  1:-(Punctuation) *2:bb(Group)
      spans: [[2,1]]  target: <high>  request enabled
      candidate 0: Valid aa-zz  1.00 -> 5.25 [<high>]
      candidate 1: Identity aa-bb  1.00 -> 1.00 [<med>] (unchanged)
      history: 0 accepted edit(s)"
    `);
    // Same state renders identically.
    expect(renderText(session)).toBe(snapshot);
  });

  it("every token class has a chip color", () => {
    for (const cls of [
      "Group", "Locant", "Multiplier", "Stereo", "RingLocant",
      "Element", "Charge", "Punctuation", "Special",
    ]) {
      expect(CLASS_COLORS[cls]).toMatch(/^#/);
    }
  });
});
