// Thin client for the session service. The explorer never computes
// mathematics: every number it shows comes out of these responses.
export class ServiceError extends Error {
}
export class Client {
    base;
    session;
    constructor(base = "", session = "ui") {
        this.base = base;
        this.session = session;
    }
    url(path, params = {}) {
        const q = new URLSearchParams({ session: this.session, ...params });
        return `${this.base}${path}?${q}`;
    }
    async exchange(path, body) {
        const init = body === undefined
            ? {}
            : { method: "POST", body: JSON.stringify(body) };
        const resp = await fetch(this.url(path), init);
        const doc = await resp.json();
        if (!resp.ok) {
            throw new ServiceError(doc.error ?? `service error ${resp.status}`);
        }
        return doc;
    }
    state() {
        return this.exchange("/state");
    }
    load(algebra) {
        return this.exchange("/load", { algebra });
    }
    mutate(panel, arc, direction) {
        return this.exchange("/mutate", { panel, arc, direction });
    }
    cut(panel, arc) {
        return this.exchange("/cut", { panel, arc });
    }
    undo() {
        return this.exchange("/undo", {});
    }
    async hom(panel, src, dst) {
        const resp = await fetch(this.url("/hom", { panel: String(panel), src: String(src), dst: String(dst) }));
        const doc = await resp.json();
        if (!resp.ok)
            throw new ServiceError(doc.error ?? "hom failed");
        return doc.perDegree;
    }
}
