// Scripted ten-step mutation+cut walk through the live HTTP API; the final
// state document must be byte-identical to the library replay.
import assert from "node:assert/strict";
import { spawn, spawnSync } from "node:child_process";
import { once } from "node:events";
import { test } from "node:test";
import { Client } from "../src/api.js";
const ALGEBRA = {
    vertices: ["1", "2", "3"],
    arrows: [
        { id: "a", source: "1", target: "2" },
        { id: "b", source: "2", target: "3" },
    ],
    relations: [],
};
const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
async function waitForServer() {
    for (let i = 0; i < 100; i++) {
        try {
            await fetch(`${BASE}/state`);
            return;
        }
        catch {
            await new Promise((r) => setTimeout(r, 100));
        }
    }
    throw new Error("server did not come up");
}
test("ten-step walk equals library replay byte for byte", async () => {
    const server = spawn("python3", ["-m", "siltsurf.cli", "serve", "--port", String(PORT)], {
        stdio: ["ignore", "ignore", "inherit"],
    });
    try {
        await waitForServer();
        const client = new Client(BASE, "walk");
        await client.load(ALGEBRA);
        const ops = [
            ["mutate", 0, 0, "left"],
            ["mutate", 0, 1, "right"],
            ["mutate", 0, 2, "left"],
            ["mutate", 0, 1, "left"],
            ["undo"],
            ["mutate", 0, 0, "right"],
            ["mutate", 0, 0, "left"],
            ["mutate", 0, 2, "right"],
            ["cut", 0, "2"],
            ["mutate", 0, 0, "left"],
        ];
        for (const op of ops) {
            if (op[0] === "mutate")
                await client.mutate(op[1], op[2], op[3]);
            else if (op[0] === "cut")
                await client.cut(op[1], op[2]);
            else
                await client.undo();
        }
        const resp = await fetch(`${BASE}/state?session=walk`);
        const overWire = await resp.text();
        const replay = spawnSync("python3", ["test/replay.py"], {
            input: JSON.stringify({ algebra: ALGEBRA, ops }),
            encoding: "utf-8",
        });
        assert.equal(replay.status, 0, replay.stderr);
        assert.equal(overWire, replay.stdout);
    }
    finally {
        server.kill();
        await once(server, "exit").catch(() => undefined);
    }
});
test("undo after mutate restores the previous state document", async () => {
    const server = spawn("python3", ["-m", "siltsurf.cli", "serve", "--port", String(PORT + 1)], {
        stdio: ["ignore", "ignore", "inherit"],
    });
    const base = `http://127.0.0.1:${PORT + 1}`;
    try {
        for (let i = 0; i < 100; i++) {
            try {
                await fetch(`${base}/state`);
                break;
            }
            catch {
                await new Promise((r) => setTimeout(r, 100));
            }
        }
        const client = new Client(base, "undo-test");
        await client.load(ALGEBRA);
        const before = JSON.stringify((await client.state()).panels);
        await client.mutate(0, 0, "left");
        await client.undo();
        const after = JSON.stringify((await client.state()).panels);
        assert.equal(before, after);
    }
    finally {
        server.kill();
        await once(server, "exit").catch(() => undefined);
    }
});
