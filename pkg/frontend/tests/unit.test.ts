import { describe, expect, it } from "vitest";

import { nearestSuggestion, tokenDiff } from "../src/diff.js";
import { OwnershipGuard, TokenStorage } from "../src/ownership.js";
import { collectGoals, firstOpenGoal } from "../src/store.js";
import { GoalNode } from "../src/api.js";

describe("token diff", () => {
  it("marks edited substitution tokens only", () => {
    const ref = "[[ ]] |- A = C {{ B : ( 4 + 1 ) }}";
    const edited = "[[ ]] |- A = C {{ B : ( 9 + 1 ) }}";
    const spans = tokenDiff(edited, ref);
    const changed = spans.filter((s) => s.changed).map((s) => s.token);
    expect(changed).toEqual(["9"]);
  });

  it("handles identical strings and empty buffers", () => {
    expect(tokenDiff("a b", "a b").every((s) => !s.changed)).toBe(true);
    expect(tokenDiff("", "a b")).toEqual([]);
  });

  it("picks the nearest suggestion", () => {
    const c1 = "[[ ]] |- x = y {{ A : 1 }}";
    const c2 = "[[ ]] |- p -> q {{ B : 2 }}";
    expect(nearestSuggestion("[[ ]] |- x = y {{ A : 7 }}", [c1, c2])).toBe(c1);
    expect(nearestSuggestion("anything", [])).toBeNull();
  });
});

describe("ownership guard", () => {
  const storage = (): TokenStorage => {
    const m = new Map<string, string>();
    return {
      getItem: (k) => m.get(k) ?? null,
      setItem: (k, v) => void m.set(k, v),
      removeItem: (k) => void m.delete(k),
    };
  };

  it("rejects a second tab on the same session", () => {
    const shared = storage();
    const tab1 = new OwnershipGuard(shared);
    const tab2 = new OwnershipGuard(shared);
    expect(tab1.claim("s1")).toBe(true);
    expect(tab2.claim("s1")).toBe(false);
    expect(tab1.claim("s1")).toBe(true); // re-claim by owner is fine
    tab1.release("s1");
    expect(tab2.claim("s1")).toBe(true);
  });
});

describe("goal tree helpers", () => {
  const leaf = (id: number, status: "open" | "proved"): GoalNode => ({
    id,
    text: `g${id}`,
    status,
    tactics: [],
  });
  const root: GoalNode = {
    id: 0,
    text: "root",
    status: "open",
    tactics: [
      {
        label: "t",
        text: "t",
        children: [leaf(2, "proved"), leaf(1, "open")],
      },
    ],
  };

  it("collects every goal and finds the first open one", () => {
    expect(collectGoals(root).map((g) => g.id)).toEqual([0, 2, 1]);
    expect(firstOpenGoal(root)?.id).toBe(0);
    const proved = { ...root, status: "proved" as const };
    expect(firstOpenGoal(proved)?.id).toBe(1);
  });
});
