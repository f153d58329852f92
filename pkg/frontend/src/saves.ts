/**
 * Saved-images panel: mirrors the server-side saved set and shows the most
 * recently saved image first. The server lists saves oldest to newest, so
 * the display order is the reverse of what save() returns.
 */

import type { ApiClient } from "./api";

export class SavePanel {
  private order: string[] = [];

  constructor(private readonly api: ApiClient) {}

  /** Saved ids, newest first. */
  get saved(): readonly string[] {
    return this.order;
  }

  isSaved(imageId: string): boolean {
    return this.order.includes(imageId);
  }

  /** Save when unsaved, unsave when saved. Resolves to the new state. */
  async toggle(imageId: string): Promise<boolean> {
    if (this.isSaved(imageId)) {
      const response = await this.api.unsave(imageId);
      this.order = [...response.saved].reverse();
      return false;
    }
    const response = await this.api.save(imageId);
    this.order = [...response.saved].reverse();
    return true;
  }
}
