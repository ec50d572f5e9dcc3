/** Centered, maximal crop box for a target aspect ratio.
 *
 * Mirrors the server's auto-crop rule so the overlay shown during
 * capture matches what the server would pick. The server echoes its own
 * result at GET /api/meta/autocrop, which the test suite compares
 * against this implementation.
 *
 * The box is the largest width x height with |w*ah - h*aw| held inside
 * the integer band (-ah, aw), both dimensions within the frame. All
 * arithmetic is integral, so the result is exact.
 */

export interface CropBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

function dimAtLimit(limitNum: number, limitDen: number, aspect: number): number {
  // floor(limitNum/limitDen * aspect), stepping down 1 when integral:
  // the scale approaches the limit from below, never reaching it
  const num = limitNum * aspect;
  return Math.floor((num + limitDen - 1) / limitDen) - 1;
}

export function autoCropBox(
  width: number,
  height: number,
  aspectW = 3,
  aspectH = 4,
): CropBox {
  if (width < 1 || height < 1 || aspectW < 1 || aspectH < 1) {
    throw new Error("autoCropBox: all arguments must be positive integers");
  }
  // limit = min((width+1)/aspectW, (height+1)/aspectH), compared exactly
  let limitNum: number;
  let limitDen: number;
  if ((width + 1) * aspectH <= (height + 1) * aspectW) {
    limitNum = width + 1;
    limitDen = aspectW;
  } else {
    limitNum = height + 1;
    limitDen = aspectH;
  }
  const w = dimAtLimit(limitNum, limitDen, aspectW);
  const h = dimAtLimit(limitNum, limitDen, aspectH);
  return {
    x: Math.floor((width - w) / 2),
    y: Math.floor((height - h) / 2),
    width: w,
    height: h,
  };
}

/** Clamp a user-nudged box back into the frame without resizing it. */
export function clampBox(box: CropBox, frameW: number, frameH: number): CropBox {
  const x = Math.min(Math.max(box.x, 0), Math.max(frameW - box.width, 0));
  const y = Math.min(Math.max(box.y, 0), Math.max(frameH - box.height, 0));
  return { x, y, width: box.width, height: box.height };
}
