/**
 * DOM rendering: collapsible goal tree with status badges, suggestion
 * list with validity flags, plain-text tactic editor with token diff
 * highlighting, and the library search panel. ASCII token display only.
 */

import { GoalNode, Suggestion, TheoremRow, TreePayload } from "./api.js";
import { nearestSuggestion, tokenDiff } from "./diff.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface TreeCallbacks {
  onSelect(goalId: number): void;
}

/**
 * Render the goal tree. Proved subtrees come out collapsed (closed
 * <details>); the proof reads bottom-up, so children precede their
 * parent's badge row visually via nesting depth.
 */
export function renderTree(
  doc: Document,
  tree: TreePayload,
  selected: number | null,
  cb: TreeCallbacks,
): HTMLElement {
  if (tree.version !== 1 || !tree.root || typeof tree.root.id !== "number") {
    const banner = el(doc, "div", "error-banner",
      "schema mismatch: refusing to render a partial tree");
    return banner;
  }
  const container = el(doc, "div", "goal-tree");

  const renderGoal = (g: GoalNode): HTMLElement => {
    const details = el(doc, "details",
      `goal goal-${g.status}${g.id === selected ? " goal-selected" : ""}`);
    details.open = g.status === "open";
    const summary = el(doc, "summary");
    const badge = el(doc, "span", `badge badge-${g.status}`, g.status);
    const label = el(doc, "span", "goal-text", g.text);
    label.addEventListener("click", (ev) => {
      ev.preventDefault();
      cb.onSelect(g.id);
    });
    summary.append(badge, label);
    details.append(summary);
    for (const t of g.tactics) {
      const tag = el(doc, "div", "tactic", `${t.label}`);
      details.append(tag);
      for (const c of t.children) {
        details.append(renderGoal(c));
      }
      if (t.children.length === 0) {
        details.append(el(doc, "div", "tactic-closed", "closed"));
      }
    }
    return details;
  };

  container.append(renderGoal(tree.root));
  return container;
}

export interface SuggestionCallbacks {
  onPick(s: Suggestion): void;
  onEdit(s: Suggestion): void;
}

/**
 * Suggestions sorted by score; invalid ones render grayed with their
 * error so the substitutions can be fixed by hand in the editor.
 */
export function renderSuggestions(
  doc: Document,
  suggestions: Suggestion[],
  cb: SuggestionCallbacks,
): HTMLElement {
  const list = el(doc, "ul", "suggestions");
  for (const s of suggestions) {
    const item = el(doc, "li", s.valid ? "suggestion" : "suggestion invalid");
    const score = el(doc, "span", "score", s.logprob.toFixed(2));
    const text = el(doc, "span", "tactic-text", s.tactic);
    item.append(score, text);
    if (s.valid) {
      const apply = el(doc, "button", "apply", "apply");
      apply.addEventListener("click", () => cb.onPick(s));
      item.append(apply);
    } else {
      item.append(el(doc, "span", "error", s.error ?? "invalid"));
      const edit = el(doc, "button", "edit", "edit");
      edit.addEventListener("click", () => cb.onEdit(s));
      item.append(edit);
    }
    list.append(item);
  }
  return list;
}

/** Editor buffer with per-token highlight against the nearest suggestion. */
export function renderEditorDiff(
  doc: Document,
  buffer: string,
  suggestions: Suggestion[],
): HTMLElement {
  const box = el(doc, "div", "editor-diff");
  const ref = nearestSuggestion(buffer, suggestions.map((s) => s.tactic));
  if (!ref || !buffer.trim()) return box;
  for (const span of tokenDiff(buffer, ref)) {
    box.append(
      el(doc, "span", span.changed ? "tok tok-changed" : "tok", span.token),
    );
    box.append(doc.createTextNode(" "));
  }
  return box;
}

export interface LibraryCallbacks {
  onInsert(row: TheoremRow): void;
}

export function renderLibrary(
  doc: Document,
  rows: TheoremRow[],
  cb: LibraryCallbacks,
): HTMLElement {
  const table = el(doc, "table", "library");
  for (const row of rows) {
    const tr = el(doc, "tr");
    tr.append(el(doc, "td", "lib-label", row.label));
    tr.append(el(doc, "td", "lib-stmt", row.statement));
    const use = el(doc, "button", "use", "use");
    use.addEventListener("click", () => cb.onInsert(row));
    const td = el(doc, "td");
    td.append(use);
    tr.append(td);
    table.append(tr);
  }
  return table;
}
