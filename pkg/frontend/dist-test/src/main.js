// Browser wiring: fetch state, render, route clicks back through the
// service. No optimistic updates: the DOM is rebuilt from the server's
// response (and a confirming /state fetch) after every transition.
import { Client, ServiceError } from "./api.js";
import { renderState } from "./render.js";
const SAMPLE = {
    vertices: ["1", "2", "3"],
    arrows: [
        { id: "a", source: "1", target: "2" },
        { id: "b", source: "2", target: "3" },
    ],
    relations: [],
};
class Explorer {
    root;
    client = new Client("");
    selected = null;
    history = [];
    constructor(root) {
        this.root = root;
        root.innerHTML = `
      <div id="toolbar">
        <textarea id="algebra" rows="4" cols="60"></textarea>
        <button id="load">load</button>
        <button id="undo">undo</button>
        <button id="toggle-dual">toggle dual</button>
        <span id="toast"></span>
      </div>
      <div id="history"></div>
      <div id="view"></div>`;
        const area = root.querySelector("#algebra");
        area.value = JSON.stringify(SAMPLE, null, 1);
        root.querySelector("#load").addEventListener("click", () => this.load());
        root.querySelector("#toggle-dual").addEventListener("click", () => {
            root.querySelector("#view").classList.toggle("hide-dual");
        });
        root.querySelector("#undo").addEventListener("click", () => this.undo());
        root.querySelector("#view").addEventListener("click", (ev) => this.onClick(ev));
    }
    toast(msg) {
        this.root.querySelector("#toast").textContent = msg;
    }
    show(state) {
        this.root.querySelector("#view").innerHTML = renderState(state, this.selected);
        this.root.querySelector("#history").textContent = this.history.join(" ; ");
    }
    async confirmAndShow() {
        // state re-fetched after the server confirms; never trust local copies
        this.show(await this.client.state());
    }
    async run(step, op) {
        try {
            await op();
            this.history.push(step);
            this.toast("");
            await this.confirmAndShow();
        }
        catch (ex) {
            if (ex instanceof ServiceError) {
                this.toast(ex.message); // precondition violations verbatim, no state change
            }
            else {
                this.toast(String(ex));
            }
        }
    }
    load() {
        const text = this.root.querySelector("#algebra").value;
        this.selected = null;
        this.history = [];
        void this.run("load", () => this.client.load(JSON.parse(text)));
    }
    undo() {
        void this.run("undo", () => this.client.undo());
    }
    onClick(ev) {
        const target = ev.target;
        const act = target.dataset.act;
        const panel = Number(target.dataset.panel ?? "0");
        const arc = target.dataset.arc;
        if (act && arc !== undefined) {
            const idx = Number(arc);
            if (act === "mutate-left") {
                void this.run(`mutate(${panel},${idx},left)`, () => this.client.mutate(panel, idx, "left"));
            }
            else if (act === "mutate-right") {
                void this.run(`mutate(${panel},${idx},right)`, () => this.client.mutate(panel, idx, "right"));
            }
            else if (act === "cut") {
                const row = target.closest("tr");
                const name = row?.querySelector(".crossings")?.textContent?.split(" ")[0];
                if (name) {
                    void this.run(`cut(${panel},${name})`, () => this.client.cut(panel, name));
                }
            }
            return;
        }
        if (arc !== undefined) {
            this.selected = { panel, arc: Number(arc) };
            void this.confirmAndShow();
        }
    }
}
if (typeof document !== "undefined") {
    const rootElement = document.getElementById("app");
    if (rootElement)
        new Explorer(rootElement);
}
export { Explorer };
