/**
 * Keyword picker state for keyword-mode generation: chips suggested by the
 * server (aligned with the session plus deliberately diversified) can be
 * toggled, and the user may add single-word custom terms of their own.
 */

import type { KeywordsResponse } from "./api";

export class KeywordPicker {
  aligned: string[] = [];
  diversified: string[] = [];
  private readonly picked = new Set<string>();

  load(response: KeywordsResponse): void {
    this.aligned = [...response.aligned];
    this.diversified = [...response.diversified];
    this.picked.clear();
  }

  toggle(term: string): boolean {
    if (this.picked.has(term)) {
      this.picked.delete(term);
      return false;
    }
    this.picked.add(term);
    return true;
  }

  isPicked(term: string): boolean {
    return this.picked.has(term);
  }

  /** Add a free-text term. Must be one word; duplicates are ignored. */
  addCustom(raw: string): boolean {
    const term = raw.trim();
    if (!term || /\s/.test(term) || this.picked.has(term)) return false;
    this.picked.add(term);
    return true;
  }

  clear(): void {
    this.picked.clear();
  }

  /** Chosen terms in insertion order, ready for the generate request. */
  selected(): string[] {
    return [...this.picked];
  }
}
