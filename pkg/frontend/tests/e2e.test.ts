/** End-to-end flow against a real server instance.
 *
 * Spawns the backend CLI against a throwaway database, then drives the
 * same client code the browser uses: login, create the reference
 * employee, upload the fixture photo, confirm the record in the list,
 * and download an ID card whose barcode scans back to the record id.
 */

import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { autoCropBox } from "../src/autocrop.js";
import { checkForm } from "../src/validation.js";
import { decodePng, luminanceRow, scanBarcodeRow } from "./helpers/png.js";

const PORT = 8300 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

// default card geometry: barcode occupies this slot on the 648x408 card
const BARCODE_SLOT = { x: 318, y: 276, width: 306, height: 96 };

const REFERENCE_EMPLOYEE = {
  emp_id: 9,
  first_name: "Sourav",
  last_name: "Bag",
  emp_contact_no: "8131042345",
  date_of_birth: "1991-05-14",
  dept: "Electronics and Cor",
  date_of_joining: "2015-07-01",
  highest_education: "M.Tech",
  designation: "Asst. Professor",
  employment_type: "Employee",
  gender: "Male",
  blood_group: "A+",
  years_of_experience: 1,
};

let workDir: string;
let server: ChildProcess;
const api = new ApiClient(BASE);

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "rollcall-e2e-"));
  const cfgPath = join(workDir, "config.json");
  writeFileSync(
    cfgPath,
    JSON.stringify({
      engine: "sqlite",
      path: join(workDir, "e2e.db"),
      admin_user: "admin",
      admin_password: "s3cret",
    }),
  );

  const migrate = spawnSync("rollcall", ["--config", cfgPath, "migrate"], {
    encoding: "utf8",
  });
  if (migrate.status !== 0) {
    throw new Error(`migrate failed: ${migrate.stdout}${migrate.stderr}`);
  }

  server = spawn("rollcall", ["--config", cfgPath, "serve", "--port", String(PORT)], {
    stdio: ["ignore", "pipe", "pipe"],
  });

  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const health = await api.health();
      expect(health.schema_version).toBe(4);
      break;
    } catch {
      if (Date.now() > deadline) throw new Error("server did not come up");
      await new Promise((r) => setTimeout(r, 250));
    }
  }
  await api.login("admin", "s3cret");
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

describe("reference workflow", () => {
  it("publishes validation bounds the client form accepts", async () => {
    const meta = await api.validationMeta();
    expect(meta.text_bounds.first_name).toBe(50);
    expect(meta.blood_groups).toContain("A+");
    expect(meta.semester_range).toEqual([1, 12]);
    const values = Object.fromEntries(
      Object.entries(REFERENCE_EMPLOYEE).map(([k, v]) => [k, String(v)]),
    );
    expect(checkForm(meta, "employees", values)).toEqual({});
  });

  it("client crop overlay matches the server's auto-crop for random frames", async () => {
    const dims = [
      [640, 480], [480, 640], [400, 400], [1283, 911], [77, 1024], [301, 300],
    ];
    for (const [w, h] of dims) {
      expect(await api.autocropEcho(w, h)).toEqual(autoCropBox(w, h));
    }
  });

  it("creates the employee, uploads the photo, and lists the record", async () => {
    await api.createRecord("employees", REFERENCE_EMPLOYEE);

    const bytes = readFileSync(join(__dirname, "fixtures", "photo.png"));
    const result = await api.uploadPhoto("employees", 9, new Blob([bytes]));
    expect(result).toMatchObject({ width: 300, height: 400 });

    const page = await api.listRecords("employees", {
      filters: { dept: "Electronics and Cor" },
    });
    expect(page.total).toBe(1);
    expect(page.items[0].first_name).toBe("Sourav");
  });

  it("surfaces a duplicate id as a 409 with a machine code", async () => {
    const err = await api.createRecord("employees", REFERENCE_EMPLOYEE).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe("duplicate_id");
  });

  it("surfaces an unsupported image as a 422", async () => {
    const gif = new Uint8Array([...Buffer.from("GIF89a"), 0, 0, 0, 0, 0, 0]);
    const err = await api
      .uploadPhoto("employees", 9, gif.buffer as ArrayBuffer)
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(422);
    expect(err.code).toBe("unsupported_format");
  });

  it("downloads a card whose barcode decodes to the record id", async () => {
    const cardBytes = new Uint8Array(await api.fetchIdCard("employees", 9));
    const png = decodePng(cardBytes);
    expect(png.width).toBe(648);
    expect(png.height).toBe(408);

    const rowY = BARCODE_SLOT.y + Math.floor(BARCODE_SLOT.height / 2);
    const fullRow = luminanceRow(png, rowY);
    const region = fullRow.slice(BARCODE_SLOT.x, BARCODE_SLOT.x + BARCODE_SLOT.width);
    expect(scanBarcodeRow(region)).toBe("9");
  });

  it("404s a card for an absent record", async () => {
    const err = await api.fetchIdCard("employees", 404).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
  });
});
