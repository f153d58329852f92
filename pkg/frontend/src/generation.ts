/**
 * Generation panel state machine.
 *
 * The panel edits one source image at a time: the user toggles segments,
 * picks reference or keyword mode, and generates. Only a single generation
 * request may be in flight; the UI stays disabled until it settles. Failed
 * requests keep the panel state so the same gesture can be retried.
 */

import type { ApiClient, GenerateResponse } from "./api";
import { SegmentSelection } from "./segments";

export type GenerationMode = "reference" | "keywords";

export class GenerationPanel {
  readonly selection = new SegmentSelection();
  mode: GenerationMode = "reference";
  referenceImageId: string | null = null;
  keywords: string[] = [];

  private imageId: string | null = null;
  private busy = false;
  private lastResult: GenerateResponse | null = null;
  private lastError: string | null = null;

  constructor(private readonly api: ApiClient) {}

  /** Point the panel at a new source image, resetting per-image state. */
  open(imageId: string): void {
    this.imageId = imageId;
    this.selection.clear();
    this.referenceImageId = null;
    this.keywords = [];
    this.lastResult = null;
    this.lastError = null;
  }

  close(): void {
    this.imageId = null;
    this.selection.clear();
    this.lastResult = null;
    this.lastError = null;
  }

  get isOpen(): boolean {
    return this.imageId !== null;
  }

  get sourceImageId(): string | null {
    return this.imageId;
  }

  get isBusy(): boolean {
    return this.busy;
  }

  get result(): GenerateResponse | null {
    return this.lastResult;
  }

  get error(): string | null {
    return this.lastError;
  }

  /** Empty selections never produce a request; the button stays disabled. */
  canGenerate(): boolean {
    if (!this.imageId || this.busy || this.selection.size === 0) return false;
    if (this.mode === "reference") return this.referenceImageId !== null;
    return this.keywords.length > 0;
  }

  /**
   * Create the mask from the current selection and run one generation.
   * Resolves with the generated image, or null when the panel was not
   * ready (caller should treat that as "button was disabled").
   */
  async generate(): Promise<GenerateResponse | null> {
    if (!this.canGenerate() || !this.imageId) return null;
    this.busy = true;
    this.lastError = null;
    try {
      const mask = await this.api.createMask(this.imageId, this.selection.selected());
      const result =
        this.mode === "reference"
          ? await this.api.generateReference(this.imageId, mask.mask_id, this.referenceImageId!)
          : await this.api.generateKeywords(this.imageId, mask.mask_id, this.keywords);
      this.lastResult = result;
      return result;
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    } finally {
      this.busy = false;
    }
  }

  /** Re-run with the same selection and settings. */
  async regenerate(): Promise<GenerateResponse | null> {
    return this.generate();
  }
}
