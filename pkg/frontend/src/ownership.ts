/**
 * Single-tab session ownership.
 *
 * The first tab to claim a session writes a random token; any other tab
 * (sharing the same storage) sees a foreign token and is rejected. The
 * owning tab releases its claim on unload.
 */

export interface TokenStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const KEY = (sessionId: string) => `mmprover.owner.${sessionId}`;

export class OwnershipGuard {
  private token = Math.random().toString(36).slice(2);

  constructor(private storage: TokenStorage) {}

  /** Claim a session; false means another tab already owns it. */
  claim(sessionId: string): boolean {
    const existing = this.storage.getItem(KEY(sessionId));
    if (existing !== null && existing !== this.token) {
      return false;
    }
    this.storage.setItem(KEY(sessionId), this.token);
    return true;
  }

  owns(sessionId: string): boolean {
    return this.storage.getItem(KEY(sessionId)) === this.token;
  }

  release(sessionId: string): void {
    if (this.owns(sessionId)) {
      this.storage.removeItem(KEY(sessionId));
    }
  }
}
