/**
 * Segment overlay helpers: decode run-length masks, track which segments the
 * user has toggled on, and hit-test clicks against the decoded masks.
 */

import type { RleMask, SegmentItem } from "./api";

/** Expand an RLE mask (alternating zero/one runs, zero run first) to a flat
 * Uint8Array of height*width values in row-major order. */
export function decodeRle(mask: RleMask): Uint8Array {
  const [height, width] = mask.size;
  const total = height * width;
  const out = new Uint8Array(total);
  let pos = 0;
  let value = 0;
  for (const run of mask.counts) {
    if (value === 1) out.fill(1, pos, pos + run);
    pos += run;
    value = 1 - value;
  }
  if (pos !== total) {
    throw new Error(`rle decodes to ${pos} pixels, expected ${total}`);
  }
  return out;
}

export class SegmentSelection {
  private readonly chosen = new Set<string>();

  toggle(segmentId: string): boolean {
    if (this.chosen.has(segmentId)) {
      this.chosen.delete(segmentId);
      return false;
    }
    this.chosen.add(segmentId);
    return true;
  }

  has(segmentId: string): boolean {
    return this.chosen.has(segmentId);
  }

  clear(): void {
    this.chosen.clear();
  }

  get size(): number {
    return this.chosen.size;
  }

  /** Selected ids in sorted order, matching what the mask endpoint echoes. */
  selected(): string[] {
    return [...this.chosen].sort();
  }
}

/**
 * Find which segment covers a pixel. Segments partition the image, so the
 * first mask claiming the pixel wins; null for out-of-bounds clicks.
 */
export function segmentAtPoint(
  segments: readonly SegmentItem[],
  decoded: ReadonlyMap<string, Uint8Array>,
  x: number,
  y: number,
): SegmentItem | null {
  for (const segment of segments) {
    const mask = decoded.get(segment.segment_id);
    if (!mask) continue;
    const [, width] = segment.rle.size;
    const [height] = segment.rle.size;
    if (x < 0 || y < 0 || x >= width || y >= height) return null;
    if (mask[y * width + x] === 1) return segment;
  }
  return null;
}
