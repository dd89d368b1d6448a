/**
 * Typed client for the proving-session HTTP API (payload version 1).
 */

export interface GoalNode {
  id: number;
  text: string;
  status: "open" | "proved";
  tactics: TacticNode[];
}

export interface TacticNode {
  label: string;
  text: string;
  children: GoalNode[];
}

export interface TreePayload {
  version: number;
  statement: string;
  proved: boolean;
  root: GoalNode;
}

export interface Suggestion {
  tactic: string;
  logprob: number;
  valid: boolean;
  error: string | null;
}

export interface TheoremRow {
  label: string;
  statement: string;
  index: number;
  kind: string;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(`api error ${status}: ${JSON.stringify(detail)}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, (body as { detail?: unknown }).detail ?? body);
  }
  return body as T;
}

export class SessionApi {
  constructor(public base: string) {}

  createSession(goal: string, label?: string) {
    return request<{ id: string; tree: TreePayload }>(`${this.base}/sessions`, {
      method: "POST",
      body: JSON.stringify({ goal, label: label ?? null }),
    });
  }

  getSession(id: string) {
    return request<{ id: string; tree: TreePayload }>(
      `${this.base}/sessions/${id}`,
    );
  }

  suggest(id: string, count: number, goalId?: number) {
    return request<{ goal_id: number; suggestions: Suggestion[] }>(
      `${this.base}/sessions/${id}/suggest`,
      {
        method: "POST",
        body: JSON.stringify({ count, goal_id: goalId ?? null }),
      },
    );
  }

  apply(id: string, tacticText: string, goalId?: number) {
    return request<{ id: string; tree: TreePayload }>(
      `${this.base}/sessions/${id}/apply`,
      {
        method: "POST",
        body: JSON.stringify({ tactic_text: tacticText, goal_id: goalId ?? null }),
      },
    );
  }

  undo(id: string) {
    return request<{ id: string; tree: TreePayload }>(
      `${this.base}/sessions/${id}/undo`,
      { method: "POST" },
    );
  }

  redo(id: string) {
    return request<{ id: string; tree: TreePayload }>(
      `${this.base}/sessions/${id}/redo`,
      { method: "POST" },
    );
  }

  exportProof(id: string, format: "mm" | "jsonl") {
    return request<{ format: string; text: string }>(
      `${this.base}/sessions/${id}/export?format=${format}`,
    );
  }

  theorems(query: string, limit = 20) {
    const q = encodeURIComponent(query);
    return request<{ version: number; theorems: TheoremRow[] }>(
      `${this.base}/theorems?query=${q}&limit=${limit}`,
    );
  }
}
