/**
 * Keyboard-navigable state for a batch of concretized query suggestions.
 *
 * Arrow keys cycle the highlight through the batch (wrapping at the ends),
 * Tab accepts the active suggestion into the search bar, Enter submits
 * whatever the bar holds. The navigator is a no-op while no batch is loaded.
 */

import type { SuggestionItem } from "./api";

export type NavOutcome =
  | { kind: "moved"; index: number }
  | { kind: "accepted"; query: string }
  | { kind: "submitted" }
  | { kind: "dismissed" }
  | { kind: "ignored" };

export class SuggestionNavigator {
  private batch: SuggestionItem[] = [];
  private index = 0;

  load(suggestions: SuggestionItem[]): void {
    this.batch = suggestions;
    this.index = 0;
  }

  clear(): void {
    this.batch = [];
    this.index = 0;
  }

  get isOpen(): boolean {
    return this.batch.length > 0;
  }

  get activeIndex(): number {
    return this.index;
  }

  get suggestions(): readonly SuggestionItem[] {
    return this.batch;
  }

  active(): SuggestionItem | null {
    return this.batch[this.index] ?? null;
  }

  moveDown(): number {
    if (this.batch.length > 0) this.index = (this.index + 1) % this.batch.length;
    return this.index;
  }

  moveUp(): number {
    if (this.batch.length > 0) {
      this.index = (this.index - 1 + this.batch.length) % this.batch.length;
    }
    return this.index;
  }

  /**
   * Interpret one key press. Tab and Enter outcomes only say what the caller
   * should do (swap the bar text / submit a search); issuing requests and
   * logging the acceptance gesture stay with the caller.
   */
  handleKey(key: string): NavOutcome {
    if (!this.isOpen) {
      return key === "Enter" ? { kind: "submitted" } : { kind: "ignored" };
    }
    switch (key) {
      case "ArrowDown":
        return { kind: "moved", index: this.moveDown() };
      case "ArrowUp":
        return { kind: "moved", index: this.moveUp() };
      case "Tab": {
        const current = this.active();
        return current ? { kind: "accepted", query: current.query } : { kind: "ignored" };
      }
      case "Enter":
        return { kind: "submitted" };
      case "Escape":
        this.clear();
        return { kind: "dismissed" };
      default:
        return { kind: "ignored" };
    }
  }
}
