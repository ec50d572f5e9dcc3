/** Photo capture and crop panel.
 *
 * Grabs frames from the webcam when the browser grants camera access;
 * a file picker sits next to it as the always-available fallback. The
 * captured image is shown with the default 3:4 crop box overlaid, which
 * the operator can nudge before uploading. The server re-validates the
 * box and returns the normalized badge photo, which is fetched back and
 * shown so the preview is exactly what will appear on the card.
 */
import { ApiError } from "./api.js";
import { autoCropBox, clampBox } from "./autocrop.js";
const NUDGE_PX = 8;
export class CapturePanel {
    constructor(api, kind, recordId) {
        this.api = api;
        this.kind = kind;
        this.recordId = recordId;
        this.stream = null;
        this.frame = null;
        this.frameBytes = null;
        this.box = null;
        this.root = document.createElement("section");
        this.root.className = "capture-panel";
        this.video = document.createElement("video");
        this.video.autoplay = true;
        this.video.muted = true;
        this.canvas = document.createElement("canvas");
        this.preview = document.createElement("img");
        this.preview.className = "photo-preview";
        this.statusLine = document.createElement("p");
        this.statusLine.className = "capture-status";
        const captureBtn = document.createElement("button");
        captureBtn.textContent = "Capture frame";
        captureBtn.addEventListener("click", () => this.captureFrame());
        const picker = document.createElement("input");
        picker.type = "file";
        picker.accept = "image/png,image/jpeg";
        picker.addEventListener("change", () => {
            const file = picker.files?.[0];
            if (file)
                void this.loadBlob(file);
        });
        const nudges = document.createElement("div");
        nudges.className = "nudge-controls";
        for (const [label, dx, dy] of [
            ["←", -NUDGE_PX, 0],
            ["→", NUDGE_PX, 0],
            ["↑", 0, -NUDGE_PX],
            ["↓", 0, NUDGE_PX],
        ]) {
            const btn = document.createElement("button");
            btn.textContent = label;
            btn.addEventListener("click", () => this.nudge(dx, dy));
            nudges.append(btn);
        }
        const uploadBtn = document.createElement("button");
        uploadBtn.textContent = "Upload photo";
        uploadBtn.addEventListener("click", () => void this.upload());
        this.root.append(this.video, captureBtn, picker, this.canvas, nudges, uploadBtn, this.preview, this.statusLine);
        void this.startCamera();
    }
    async startCamera() {
        if (!navigator.mediaDevices?.getUserMedia) {
            this.status("No camera available; use the file picker.");
            return;
        }
        try {
            this.stream = await navigator.mediaDevices.getUserMedia({ video: true });
            this.video.srcObject = this.stream;
        }
        catch {
            this.status("Camera denied; use the file picker.");
            this.video.hidden = true;
        }
    }
    status(message) {
        this.statusLine.textContent = message;
    }
    captureFrame() {
        if (!this.stream || this.video.videoWidth === 0) {
            this.status("No live camera frame to capture.");
            return;
        }
        const grab = document.createElement("canvas");
        grab.width = this.video.videoWidth;
        grab.height = this.video.videoHeight;
        grab.getContext("2d").drawImage(this.video, 0, 0);
        grab.toBlob((blob) => {
            if (blob)
                void this.loadBlob(blob);
        }, "image/png");
    }
    async loadBlob(blob) {
        this.frameBytes = blob;
        this.frame = await createImageBitmap(blob);
        this.box = autoCropBox(this.frame.width, this.frame.height);
        this.redraw();
        this.status(`Loaded ${this.frame.width}x${this.frame.height}; adjust the crop and upload.`);
    }
    nudge(dx, dy) {
        if (!this.frame || !this.box)
            return;
        this.box = clampBox({ ...this.box, x: this.box.x + dx, y: this.box.y + dy }, this.frame.width, this.frame.height);
        this.redraw();
    }
    redraw() {
        if (!this.frame || !this.box)
            return;
        this.canvas.width = this.frame.width;
        this.canvas.height = this.frame.height;
        const ctx = this.canvas.getContext("2d");
        ctx.drawImage(this.frame, 0, 0);
        ctx.strokeStyle = "#e33";
        ctx.lineWidth = Math.max(2, Math.round(this.frame.width / 320));
        ctx.strokeRect(this.box.x, this.box.y, this.box.width, this.box.height);
    }
    async upload() {
        if (!this.frameBytes || !this.box) {
            this.status("Capture or pick an image first.");
            return;
        }
        try {
            const { width, height } = await this.api.uploadPhoto(this.kind, this.recordId, this.frameBytes, this.box);
            const normalized = await this.api.fetchPhoto(this.kind, this.recordId);
            this.preview.src = URL.createObjectURL(new Blob([normalized], { type: "image/png" }));
            this.status(`Stored as ${width}x${height} badge photo.`);
        }
        catch (e) {
            this.status(e instanceof ApiError ? `Rejected: ${e.detail}` : String(e));
        }
    }
    dispose() {
        this.stream?.getTracks().forEach((t) => t.stop());
    }
}
//# sourceMappingURL=capture.js.map