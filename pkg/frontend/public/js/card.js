/** ID-card preview page: shows the rendered card for a record and
 * offers it as a download. Records without a photo still get a card
 * (the server draws a placeholder); an absent id shows a not-found
 * message instead of an image.
 */
import { ApiError } from "./api.js";
export function buildCardPage(api, kind, id) {
    const root = document.createElement("section");
    root.className = "card-page";
    const img = document.createElement("img");
    img.className = "card-image";
    img.alt = `ID card for ${kind.slice(0, -1)} ${id}`;
    const message = document.createElement("p");
    const download = document.createElement("a");
    download.textContent = "Download card";
    download.download = `${kind.slice(0, -1)}-${id}-idcard.png`;
    download.hidden = true;
    root.append(img, message, download);
    void (async () => {
        try {
            const bytes = await api.fetchIdCard(kind, id);
            const url = URL.createObjectURL(new Blob([bytes], { type: "image/png" }));
            img.src = url;
            download.href = url;
            download.hidden = false;
        }
        catch (e) {
            img.hidden = true;
            if (e instanceof ApiError && e.status === 404) {
                message.textContent = `No ${kind.slice(0, -1)} with id ${id}.`;
            }
            else {
                message.textContent = e instanceof ApiError ? e.detail : String(e);
            }
        }
    })();
    return root;
}
//# sourceMappingURL=card.js.map