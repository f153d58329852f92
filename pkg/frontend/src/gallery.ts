/**
 * Append-only gallery state.
 *
 * Every search (text, similar-to-image, or search-with-generated-result)
 * opens a new section stacked below the previous ones. Sections are never
 * replaced or reordered; Show more only extends the section that owns the
 * query token, so earlier results stay exactly where the user saw them.
 */

import type { ResultItem, SearchResponse } from "./api";

export type SectionKind = "text" | "similar" | "generated";

export interface GallerySection {
  kind: SectionKind;
  label: string;
  queryToken: string;
  items: ResultItem[];
  exhausted: boolean;
  seedImageId?: string;
}

export class GalleryStore {
  private readonly store: GallerySection[] = [];

  get sections(): readonly GallerySection[] {
    return this.store;
  }

  appendSection(
    kind: SectionKind,
    label: string,
    page: SearchResponse,
    seedImageId?: string,
  ): GallerySection {
    const section: GallerySection = {
      kind,
      label,
      queryToken: page.query_token,
      items: [...page.items],
      exhausted: page.exhausted,
      seedImageId,
    };
    this.store.push(section);
    return section;
  }

  /** Extend the section holding `queryToken` with a follow-up page. */
  extendSection(queryToken: string, page: SearchResponse): GallerySection {
    const section = this.store.find((s) => s.queryToken === queryToken);
    if (!section) throw new Error(`no gallery section for token ${queryToken}`);
    section.items.push(...page.items);
    section.exhausted = page.exhausted;
    return section;
  }

  findItem(imageId: string): ResultItem | null {
    for (let i = this.store.length - 1; i >= 0; i--) {
      const hit = this.store[i].items.find((item) => item.image_id === imageId);
      if (hit) return hit;
    }
    return null;
  }
}
