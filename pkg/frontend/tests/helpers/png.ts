/** Minimal PNG reader and Code 39 scanner for tests.
 *
 * Deliberately independent of the server code: the e2e test proves the
 * downloaded card is scannable using nothing but the PNG bytes. Handles
 * the subset of PNG the server emits (8-bit RGB/RGBA/gray, not
 * interlaced).
 */

import { inflateSync } from "node:zlib";

export interface DecodedPng {
  width: number;
  height: number;
  channels: number;
  pixels: Uint8Array; // row-major, `channels` bytes per pixel
}

const CHANNELS: Record<number, number> = { 0: 1, 2: 3, 4: 2, 6: 4 };

export function decodePng(data: Uint8Array): DecodedPng {
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const magic = [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a];
  magic.forEach((b, i) => {
    if (data[i] !== b) throw new Error("not a PNG");
  });

  let width = 0;
  let height = 0;
  let channels = 0;
  const idat: Uint8Array[] = [];
  let off = 8;
  while (off < data.length) {
    const len = view.getUint32(off);
    const type = new TextDecoder("latin1").decode(data.subarray(off + 4, off + 8));
    const body = data.subarray(off + 8, off + 8 + len);
    if (type === "IHDR") {
      width = view.getUint32(off + 8);
      height = view.getUint32(off + 12);
      const bitDepth = body[8];
      const colorType = body[9];
      const interlace = body[12];
      if (bitDepth !== 8 || interlace !== 0 || !(colorType in CHANNELS)) {
        throw new Error(`unsupported PNG layout (depth ${bitDepth}, color ${colorType})`);
      }
      channels = CHANNELS[colorType];
    } else if (type === "IDAT") {
      idat.push(body);
    } else if (type === "IEND") {
      break;
    }
    off += 12 + len;
  }

  const raw = inflateSync(Buffer.concat(idat.map((c) => Buffer.from(c))));
  const stride = width * channels;
  const pixels = new Uint8Array(height * stride);
  let prev = new Uint8Array(stride);
  for (let y = 0; y < height; y++) {
    const filter = raw[y * (stride + 1)];
    const line = raw.subarray(y * (stride + 1) + 1, (y + 1) * (stride + 1));
    const out = pixels.subarray(y * stride, (y + 1) * stride);
    for (let x = 0; x < stride; x++) {
      const a = x >= channels ? out[x - channels] : 0;
      const b = prev[x];
      const c = x >= channels ? prev[x - channels] : 0;
      let value = line[x];
      switch (filter) {
        case 0:
          break;
        case 1:
          value += a;
          break;
        case 2:
          value += b;
          break;
        case 3:
          value += (a + b) >> 1;
          break;
        case 4: {
          const p = a + b - c;
          const pa = Math.abs(p - a);
          const pb = Math.abs(p - b);
          const pc = Math.abs(p - c);
          value += pa <= pb && pa <= pc ? a : pb <= pc ? b : c;
          break;
        }
        default:
          throw new Error(`bad filter byte ${filter}`);
      }
      out[x] = value & 0xff;
    }
    prev = out;
  }
  return { width, height, channels, pixels };
}

export function luminanceRow(png: DecodedPng, y: number): Uint8Array {
  const row = new Uint8Array(png.width);
  for (let x = 0; x < png.width; x++) {
    row[x] = png.pixels[(y * png.width + x) * png.channels];
  }
  return row;
}

// Code 39 patterns for the characters the cards carry (record ids are
// numeric). 1 = narrow element, 2 = wide; bar/space alternate, bar first.
const PATTERNS: Record<string, string> = {
  "0": "111221211",
  "1": "211211112",
  "2": "112211112",
  "3": "212211111",
  "4": "111221112",
  "5": "211221111",
  "6": "112221111",
  "7": "111211212",
  "8": "211211211",
  "9": "112211211",
  "*": "121121211",
};
const REVERSE = new Map(Object.entries(PATTERNS).map(([ch, p]) => [p, ch]));

/** Scan one image row (luminance values) and decode the Code 39 text. */
export function scanBarcodeRow(row: Uint8Array): string {
  // binarize and trim the quiet zones
  const dark = Array.from(row, (v) => v < 128);
  let start = dark.indexOf(true);
  let end = dark.lastIndexOf(true);
  if (start === -1) throw new Error("blank row");

  // run lengths, starting on a bar
  const runs: number[] = [];
  let current = dark[start];
  let length = 0;
  for (let x = start; x <= end; x++) {
    if (dark[x] === current) {
      length++;
    } else {
      runs.push(length);
      current = dark[x];
      length = 1;
    }
  }
  runs.push(length);

  const narrow = Math.min(...runs);
  const widths = runs.map((r) => {
    const units = Math.round(r / narrow);
    if (units !== 1 && units !== 2) throw new Error(`ambiguous run of ${r}px`);
    return units;
  });

  // groups of 9 elements separated by a single narrow gap
  if (widths.length % 10 !== 9) throw new Error("element count is not 9 per character");
  let text = "";
  for (let i = 0; i < widths.length; i += 10) {
    const pattern = widths.slice(i, i + 9).join("");
    const ch = REVERSE.get(pattern);
    if (!ch) throw new Error(`unknown pattern ${pattern}`);
    if (i + 9 < widths.length && widths[i + 9] !== 1) {
      throw new Error("inter-character gap is not narrow");
    }
    text += ch;
  }
  if (!text.startsWith("*") || !text.endsWith("*") || text.length < 3) {
    throw new Error("missing start/stop delimiters");
  }
  return text.slice(1, -1);
}
