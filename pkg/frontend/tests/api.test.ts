/** The HTTP contract as seen from the client. */

import { describe, expect, it } from "vitest";

import { ApiError, mutableIds } from "../src/api.js";
import { BIG_REQUEST, api } from "./helpers.js";

describe("SeedApi", () => {
  it("reports the service healthy", async () => {
    expect(await api().health()).toBe(true);
  });

  it("loads the eight-vertex stratum", async () => {
    const state = await api().seed(BIG_REQUEST);
    expect(state.doc.counts).toEqual({ vertices: 8, frozen: 5, mutable: 3 });
    expect(state.doc.vertices.map((v) => v.id)).toEqual([
      3, 7, 8, 10, 11, 12, 13, 14,
    ]);
    expect(mutableIds(state.doc)).toEqual([3, 7, 8]);
    expect(state.doc.meta.mutable_type).toBe("A3");
    expect(state.text).toContain('"frozen": true');
  });

  it("keeps the exact response bytes", async () => {
    const state = await api().seed(BIG_REQUEST);
    expect(JSON.parse(state.text)).toEqual(state.doc);
    expect(state.text.endsWith("\n")).toBe(true);
  });

  it("surfaces v above w as a 422 ApiError", async () => {
    await expect(
      api().seed({ type: "A3", v: "s1 s2 s1", w: "s1" }),
    ).rejects.toSatisfy((err: unknown) => {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(422);
      expect((err as ApiError).message).toMatch(/Bruhat/);
      return true;
    });
  });

  it("surfaces malformed requests as a 400 ApiError", async () => {
    await expect(
      api().seed({ type: "Q7", w: "s1" }),
    ).rejects.toSatisfy((err: unknown) => {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(400);
      return true;
    });
  });

  it("rejects mutation at a frozen vertex with a 422", async () => {
    const state = await api().seed(BIG_REQUEST);
    await expect(api().mutate(state, 10)).rejects.toSatisfy(
      (err: unknown) => {
        expect(err).toBeInstanceOf(ApiError);
        expect((err as ApiError).status).toBe(422);
        return true;
      },
    );
  });

  it("mutates and rewrites exactly one variable", async () => {
    const state = await api().seed(BIG_REQUEST);
    const next = await api().mutate(state, 3);
    expect(next.doc.variables[0]).toBe("(x7*x8 + x10*x14)/x3");
    expect(next.doc.variables.slice(1)).toEqual(state.doc.variables.slice(1));
  });
});
