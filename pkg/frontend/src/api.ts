// Thin client for the session service. The explorer never computes
// mathematics: every number it shows comes out of these responses.

import type { StateDoc } from "./types.js";

export class ServiceError extends Error {}

export class Client {
  constructor(private base: string = "", private session: string = "ui") {}

  private url(path: string, params: Record<string, string> = {}): string {
    const q = new URLSearchParams({ session: this.session, ...params });
    return `${this.base}${path}?${q}`;
  }

  private async exchange(path: string, body?: unknown): Promise<StateDoc> {
    const init: RequestInit =
      body === undefined
        ? {}
        : { method: "POST", body: JSON.stringify(body) };
    const resp = await fetch(this.url(path), init);
    const doc = await resp.json();
    if (!resp.ok) {
      throw new ServiceError(doc.error ?? `service error ${resp.status}`);
    }
    return doc as StateDoc;
  }

  state(): Promise<StateDoc> {
    return this.exchange("/state");
  }

  load(algebra: unknown): Promise<StateDoc> {
    return this.exchange("/load", { algebra });
  }

  mutate(panel: number, arc: number, direction: "left" | "right"): Promise<StateDoc> {
    return this.exchange("/mutate", { panel, arc, direction });
  }

  cut(panel: number, arc: string): Promise<StateDoc> {
    return this.exchange("/cut", { panel, arc });
  }

  undo(): Promise<StateDoc> {
    return this.exchange("/undo", {});
  }

  async hom(panel: number, src: number, dst: number): Promise<Record<string, number>> {
    const resp = await fetch(
      this.url("/hom", { panel: String(panel), src: String(src), dst: String(dst) })
    );
    const doc = await resp.json();
    if (!resp.ok) throw new ServiceError(doc.error ?? "hom failed");
    return doc.perDegree as Record<string, number>;
  }
}
