/** Photo capture and crop panel.
 *
 * Grabs frames from the webcam when the browser grants camera access;
 * a file picker sits next to it as the always-available fallback. The
 * captured image is shown with the default 3:4 crop box overlaid, which
 * the operator can nudge before uploading. The server re-validates the
 * box and returns the normalized badge photo, which is fetched back and
 * shown so the preview is exactly what will appear on the card.
 */
import { ApiClient, RecordKind } from "./api.js";
export declare class CapturePanel {
    private api;
    private kind;
    private recordId;
    root: HTMLElement;
    private video;
    private canvas;
    private preview;
    private statusLine;
    private stream;
    private frame;
    private frameBytes;
    private box;
    constructor(api: ApiClient, kind: RecordKind, recordId: number);
    private startCamera;
    private status;
    private captureFrame;
    private loadBlob;
    private nudge;
    private redraw;
    private upload;
    dispose(): void;
}
