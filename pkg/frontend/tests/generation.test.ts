import { describe, expect, it, vi } from "vitest";

import type { ApiClient, GenerateResponse, MaskResponse } from "../src/api";
import { GenerationPanel } from "../src/generation";

const MASK: MaskResponse = {
  mask_id: "mask-0001",
  image_id: "img-001",
  selected_segment_ids: ["r1c1"],
  area: 64,
};

function generated(id: string): GenerateResponse {
  return {
    session_id: "s",
    image_id: id,
    parent_image_id: "img-001",
    mode: "reference",
    backend_id: "stub",
    elapsed: 0.01,
    uri: `/images/${id}`,
    width: 32,
    height: 32,
    description: "poster modified with reference",
  };
}

function fakeApi(overrides: Partial<ApiClient> = {}): ApiClient {
  return {
    createMask: vi.fn().mockResolvedValue(MASK),
    generateReference: vi.fn().mockResolvedValue(generated("gen-0001")),
    generateKeywords: vi.fn().mockResolvedValue(generated("gen-0002")),
    ...overrides,
  } as unknown as ApiClient;
}

describe("GenerationPanel", () => {
  it("cannot generate while closed", () => {
    const panel = new GenerationPanel(fakeApi());
    expect(panel.canGenerate()).toBe(false);
  });

  it("cannot generate with an empty selection, and never sends a request", async () => {
    const api = fakeApi();
    const panel = new GenerationPanel(api);
    panel.open("img-001");
    panel.referenceImageId = "img-002";

    expect(panel.canGenerate()).toBe(false);
    expect(await panel.generate()).toBeNull();
    expect(api.createMask).not.toHaveBeenCalled();
  });

  it("requires a reference image in reference mode", () => {
    const panel = new GenerationPanel(fakeApi());
    panel.open("img-001");
    panel.selection.toggle("r1c1");
    expect(panel.canGenerate()).toBe(false);
    panel.referenceImageId = "img-002";
    expect(panel.canGenerate()).toBe(true);
  });

  it("requires at least one keyword in keywords mode", () => {
    const panel = new GenerationPanel(fakeApi());
    panel.open("img-001");
    panel.selection.toggle("r1c1");
    panel.mode = "keywords";
    expect(panel.canGenerate()).toBe(false);
    panel.keywords = ["neon"];
    expect(panel.canGenerate()).toBe(true);
  });

  it("builds the mask from the selection, then generates", async () => {
    const api = fakeApi();
    const panel = new GenerationPanel(api);
    panel.open("img-001");
    panel.selection.toggle("r1c2");
    panel.selection.toggle("r1c1");
    panel.referenceImageId = "img-002";

    const result = await panel.generate();

    expect(api.createMask).toHaveBeenCalledWith("img-001", ["r1c1", "r1c2"]);
    expect(api.generateReference).toHaveBeenCalledWith("img-001", "mask-0001", "img-002");
    expect(result?.image_id).toBe("gen-0001");
    expect(panel.result?.image_id).toBe("gen-0001");
    expect(panel.isBusy).toBe(false);
  });

  it("routes keyword mode to the keyword endpoint", async () => {
    const api = fakeApi();
    const panel = new GenerationPanel(api);
    panel.open("img-001");
    panel.selection.toggle("r2c2");
    panel.mode = "keywords";
    panel.keywords = ["neon", "bold"];

    await panel.generate();

    expect(api.generateKeywords).toHaveBeenCalledWith("img-001", "mask-0001", ["neon", "bold"]);
    expect(api.generateReference).not.toHaveBeenCalled();
  });

  it("allows only one generation in flight", async () => {
    let releaseMask: (mask: MaskResponse) => void = () => {};
    const api = fakeApi({
      createMask: vi.fn().mockReturnValue(
        new Promise<MaskResponse>((resolve) => {
          releaseMask = resolve;
        }),
      ),
    } as Partial<ApiClient>);
    const panel = new GenerationPanel(api);
    panel.open("img-001");
    panel.selection.toggle("r1c1");
    panel.referenceImageId = "img-002";

    const first = panel.generate();
    expect(panel.isBusy).toBe(true);

    const second = await panel.generate();
    expect(second).toBeNull();
    expect(api.createMask).toHaveBeenCalledTimes(1);

    releaseMask(MASK);
    const result = await first;
    expect(result?.image_id).toBe("gen-0001");
    expect(panel.isBusy).toBe(false);
  });

  it("records the failure and stays retryable", async () => {
    const api = fakeApi({
      generateReference: vi.fn().mockRejectedValue(new Error("BackendUnavailable: down")),
    } as Partial<ApiClient>);
    const panel = new GenerationPanel(api);
    panel.open("img-001");
    panel.selection.toggle("r1c1");
    panel.referenceImageId = "img-002";

    await expect(panel.generate()).rejects.toThrow("BackendUnavailable");
    expect(panel.error).toContain("BackendUnavailable");
    expect(panel.isBusy).toBe(false);
    expect(panel.canGenerate()).toBe(true); // same gesture can be retried
  });

  it("resets per-image state when pointed at a new image", async () => {
    const panel = new GenerationPanel(fakeApi());
    panel.open("img-001");
    panel.selection.toggle("r1c1");
    panel.referenceImageId = "img-002";
    await panel.generate();

    panel.open("img-003");
    expect(panel.selection.size).toBe(0);
    expect(panel.referenceImageId).toBeNull();
    expect(panel.result).toBeNull();
    expect(panel.error).toBeNull();
  });
});
