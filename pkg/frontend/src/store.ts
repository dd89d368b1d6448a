/**
 * View state for the assistant: server-authoritative by construction.
 *
 * Every mutation goes through the API and the rendered tree is always the
 * last tree the server acknowledged; nothing is patched optimistically.
 * Errors leave the state untouched (besides `lastError`), so apply, undo
 * and export stay reachable after any failure.
 */

import {
  ApiError,
  GoalNode,
  SessionApi,
  Suggestion,
  TheoremRow,
  TreePayload,
} from "./api.js";

export interface ViewState {
  sessionId: string | null;
  tree: TreePayload | null;
  selectedGoal: number | null;
  suggestions: Suggestion[];
  suggestionsFor: number | null;
  editorBuffer: string;
  canUndo: boolean;
  canRedo: boolean;
  lastError: string | null;
  library: TheoremRow[];
}

export function collectGoals(root: GoalNode): GoalNode[] {
  const out: GoalNode[] = [];
  const walk = (g: GoalNode) => {
    out.push(g);
    for (const t of g.tactics) t.children.forEach(walk);
  };
  walk(root);
  return out;
}

export function firstOpenGoal(root: GoalNode): GoalNode | null {
  return collectGoals(root)
    .filter((g) => g.status === "open")
    .sort((a, b) => a.id - b.id)[0] ?? null;
}

type Listener = (s: ViewState) => void;

export class AssistantStore {
  state: ViewState = {
    sessionId: null,
    tree: null,
    selectedGoal: null,
    suggestions: [],
    suggestionsFor: null,
    editorBuffer: "",
    canUndo: false,
    canRedo: false,
    lastError: null,
    library: [],
  };
  private listeners: Listener[] = [];
  private undoDepth = 0;
  private redoDepth = 0;

  constructor(public api: SessionApi) {}

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit() {
    for (const fn of this.listeners) fn(this.state);
  }

  private setTree(tree: TreePayload) {
    const goals = collectGoals(tree.root);
    let selected = this.state.selectedGoal;
    if (selected === null || !goals.some((g) => g.id === selected)) {
      selected = firstOpenGoal(tree.root)?.id ?? tree.root.id;
    }
    this.state = {
      ...this.state,
      tree,
      selectedGoal: selected,
      canUndo: this.undoDepth > 0,
      canRedo: this.redoDepth > 0,
      lastError: null,
    };
    this.emit();
  }

  private fail(e: unknown) {
    const msg =
      e instanceof ApiError ? JSON.stringify(e.detail) : String(e);
    this.state = { ...this.state, lastError: msg };
    this.emit();
  }

  async createSession(goal: string, label?: string): Promise<boolean> {
    try {
      const { id, tree } = await this.api.createSession(goal, label);
      this.state = { ...this.state, sessionId: id, suggestions: [] };
      this.undoDepth = 0;
      this.redoDepth = 0;
      this.setTree(tree);
      return true;
    } catch (e) {
      this.fail(e);
      return false;
    }
  }

  /** Re-fetch the authoritative tree; the view never drifts from it. */
  async refresh(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const { tree } = await this.api.getSession(this.state.sessionId);
      this.setTree(tree);
    } catch (e) {
      this.fail(e);
    }
  }

  selectGoal(id: number) {
    this.state = { ...this.state, selectedGoal: id };
    this.emit();
  }

  setEditor(text: string) {
    this.state = { ...this.state, editorBuffer: text };
    this.emit();
  }

  async requestSuggestions(count = 8): Promise<void> {
    const { sessionId, selectedGoal } = this.state;
    if (!sessionId) return;
    try {
      const { goal_id, suggestions } = await this.api.suggest(
        sessionId,
        count,
        selectedGoal ?? undefined,
      );
      this.state = {
        ...this.state,
        suggestions,
        suggestionsFor: goal_id,
        lastError: null,
      };
      this.emit();
    } catch (e) {
      this.fail(e);
    }
  }

  async applyTactic(text: string, goalId?: number): Promise<boolean> {
    const { sessionId, selectedGoal } = this.state;
    if (!sessionId) return false;
    try {
      const { tree } = await this.api.apply(
        sessionId,
        text,
        goalId ?? selectedGoal ?? undefined,
      );
      this.undoDepth += 1;
      this.redoDepth = 0;
      this.setTree(tree);
      return true;
    } catch (e) {
      this.fail(e);
      return false;
    }
  }

  async undo(): Promise<boolean> {
    const { sessionId } = this.state;
    if (!sessionId) return false;
    try {
      const { tree } = await this.api.undo(sessionId);
      this.undoDepth = Math.max(0, this.undoDepth - 1);
      this.redoDepth += 1;
      this.setTree(tree);
      return true;
    } catch (e) {
      this.fail(e);
      return false;
    }
  }

  async redo(): Promise<boolean> {
    const { sessionId } = this.state;
    if (!sessionId) return false;
    try {
      const { tree } = await this.api.redo(sessionId);
      this.redoDepth = Math.max(0, this.redoDepth - 1);
      this.undoDepth += 1;
      this.setTree(tree);
      return true;
    } catch (e) {
      this.fail(e);
      return false;
    }
  }

  async exportText(format: "mm" | "jsonl"): Promise<string | null> {
    const { sessionId } = this.state;
    if (!sessionId) return null;
    try {
      const { text } = await this.api.exportProof(sessionId, format);
      return text;
    } catch (e) {
      this.fail(e);
      return null;
    }
  }

  async searchLibrary(query: string): Promise<void> {
    try {
      const { theorems } = await this.api.theorems(query);
      this.state = { ...this.state, library: theorems, lastError: null };
      this.emit();
    } catch (e) {
      this.fail(e);
    }
  }
}
