import { describe, expect, it, vi } from "vitest";

import type { ApiClient } from "../src/api";
import { SavePanel } from "../src/saves";

function fakeApi(): ApiClient & { save: ReturnType<typeof vi.fn>; unsave: ReturnType<typeof vi.fn> } {
  // server keeps insertion order, oldest first
  const saved: string[] = [];
  return {
    save: vi.fn(async (id: string) => {
      if (!saved.includes(id)) saved.push(id);
      return { session_id: "s", saved: [...saved] };
    }),
    unsave: vi.fn(async (id: string) => {
      const at = saved.indexOf(id);
      if (at >= 0) saved.splice(at, 1);
      return { session_id: "s", saved: [...saved] };
    }),
  } as unknown as ApiClient & { save: ReturnType<typeof vi.fn>; unsave: ReturnType<typeof vi.fn> };
}

describe("SavePanel", () => {
  it("shows the newest save first", async () => {
    const panel = new SavePanel(fakeApi());
    await panel.toggle("a");
    await panel.toggle("b");
    await panel.toggle("c");
    expect(panel.saved).toEqual(["c", "b", "a"]);
  });

  it("toggles an already-saved image off", async () => {
    const api = fakeApi();
    const panel = new SavePanel(api);
    await panel.toggle("a");
    await panel.toggle("b");

    const nowSaved = await panel.toggle("a");

    expect(nowSaved).toBe(false);
    expect(api.unsave).toHaveBeenCalledWith("a");
    expect(panel.saved).toEqual(["b"]);
  });

  it("save then unsave leaves the panel empty", async () => {
    const panel = new SavePanel(fakeApi());
    await panel.toggle("a");
    await panel.toggle("a");
    expect(panel.saved).toEqual([]);
    expect(panel.isSaved("a")).toBe(false);
  });
});
