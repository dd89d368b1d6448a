// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import { GoalNode, Suggestion, TreePayload } from "../src/api.js";
import {
  renderEditorDiff,
  renderLibrary,
  renderSuggestions,
  renderTree,
} from "../src/view.js";

const doc = document;

function goal(id: number, status: "open" | "proved", kids: GoalNode[] = [],
              closed = false): GoalNode {
  return {
    id,
    text: `[[ ]] |- g${id}`,
    status,
    tactics: kids.length || closed
      ? [{ label: "step", text: "step", children: kids }]
      : [],
  };
}

function payload(root: GoalNode): TreePayload {
  return { version: 1, statement: "t", proved: root.status === "proved", root };
}

describe("tree rendering", () => {
  it("renders badges and selects goals", () => {
    let selected = -1;
    const tree = payload(goal(0, "open", [goal(1, "proved", [], true)]));
    const el = renderTree(doc, tree, 0, { onSelect: (id) => (selected = id) });
    expect(el.querySelectorAll(".badge-open").length).toBe(1);
    expect(el.querySelectorAll(".badge-proved").length).toBe(1);
    const proved = el.querySelector("details.goal-proved") as HTMLDetailsElement;
    expect(proved.open).toBe(false); // proved subtrees come out collapsed
    (el.querySelectorAll(".goal-text")[1] as HTMLElement).click();
    expect(selected).toBe(1);
  });

  it("refuses to render on schema mismatch", () => {
    const bad = { version: 2 } as unknown as TreePayload;
    const el = renderTree(doc, bad, null, { onSelect: () => {} });
    expect(el.className).toContain("error-banner");
    expect(el.querySelectorAll(".goal-tree").length).toBe(0);
  });

  it("re-renders a 200-node tree within the latency budget", () => {
    let node = goal(400, "open");
    for (let i = 199; i >= 0; i--) {
      node = goal(i, "open", [node]);
    }
    const tree = payload(node);
    const t0 = performance.now();
    const el = renderTree(doc, tree, 0, { onSelect: () => {} });
    const dt = performance.now() - t0;
    expect(el.querySelectorAll("details").length).toBeGreaterThanOrEqual(200);
    expect(dt).toBeLessThan(100);
  });
});

describe("suggestion list", () => {
  const suggestions: Suggestion[] = [
    { tactic: "[[ ]] |- ok", logprob: -0.5, valid: true, error: null },
    { tactic: "[[ ]] |- broken", logprob: -1.0, valid: false,
      error: "conclusion mismatch" },
  ];

  it("grays invalid suggestions and shows their error", () => {
    const picked: string[] = [];
    const edited: string[] = [];
    const el = renderSuggestions(doc, suggestions, {
      onPick: (s) => picked.push(s.tactic),
      onEdit: (s) => edited.push(s.tactic),
    });
    const items = el.querySelectorAll("li");
    expect(items.length).toBe(2);
    expect(items[1]!.className).toContain("invalid");
    expect(items[1]!.textContent).toContain("conclusion mismatch");
    (items[0]!.querySelector("button.apply") as HTMLElement).click();
    expect(picked).toEqual(["[[ ]] |- ok"]);
    // invalid ones route to the editor so the human can fix substitutions
    (items[1]!.querySelector("button.edit") as HTMLElement).click();
    expect(edited).toEqual(["[[ ]] |- broken"]);
  });

  it("highlights edited tokens against the nearest suggestion", () => {
    const el = renderEditorDiff(doc, "[[ ]] |- okay", suggestions);
    const changed = Array.from(el.querySelectorAll(".tok-changed"))
      .map((n) => n.textContent);
    expect(changed).toEqual(["okay"]);
  });
});

describe("library panel", () => {
  it("lists rows and inserts statements into the editor", () => {
    const inserted: string[] = [];
    const el = renderLibrary(doc,
      [{ label: "3p2e5", statement: "[[ ]] |- ( 3 + 2 ) = 5",
         index: 1, kind: "p" }],
      { onInsert: (r) => inserted.push(r.statement) });
    (el.querySelector("button.use") as HTMLElement).click();
    expect(inserted).toEqual(["[[ ]] |- ( 3 + 2 ) = 5"]);
  });
});
