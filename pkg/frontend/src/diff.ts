/**
 * Token-level diff between the editor buffer and the nearest suggestion,
 * driving the highlight that shows which substitution tokens were edited.
 */

export interface DiffSpan {
  token: string;
  changed: boolean;
}

/** Longest-common-subsequence walk over whitespace tokens. */
export function tokenDiff(edited: string, reference: string): DiffSpan[] {
  const a = edited.split(/\s+/).filter(Boolean);
  const b = reference.split(/\s+/).filter(Boolean);
  const n = a.length;
  const m = b.length;
  const lcs: number[][] = Array.from({ length: n + 1 }, () =>
    new Array<number>(m + 1).fill(0),
  );
  for (let i = n - 1; i >= 0; i--) {
    for (let j = m - 1; j >= 0; j--) {
      lcs[i]![j] =
        a[i] === b[j]
          ? lcs[i + 1]![j + 1]! + 1
          : Math.max(lcs[i + 1]![j]!, lcs[i]![j + 1]!);
    }
  }
  const out: DiffSpan[] = [];
  let i = 0;
  let j = 0;
  while (i < n && j < m) {
    if (a[i] === b[j]) {
      out.push({ token: a[i]!, changed: false });
      i++;
      j++;
    } else if (lcs[i + 1]![j]! >= lcs[i]![j + 1]!) {
      out.push({ token: a[i]!, changed: true });
      i++;
    } else {
      j++;
    }
  }
  for (; i < n; i++) out.push({ token: a[i]!, changed: true });
  return out;
}

/** Pick the suggestion closest to the buffer by unchanged-token count. */
export function nearestSuggestion(
  buffer: string,
  candidates: string[],
): string | null {
  let best: string | null = null;
  let bestScore = -1;
  for (const c of candidates) {
    const spans = tokenDiff(buffer, c);
    const score = spans.filter((s) => !s.changed).length - spans.length / 1e6;
    if (score > bestScore) {
      bestScore = score;
      best = c;
    }
  }
  return best;
}
