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
export declare function autoCropBox(width: number, height: number, aspectW?: number, aspectH?: number): CropBox;
/** Clamp a user-nudged box back into the frame without resizing it. */
export declare function clampBox(box: CropBox, frameW: number, frameH: number): CropBox;
