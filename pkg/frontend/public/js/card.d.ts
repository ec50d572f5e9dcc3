/** ID-card preview page: shows the rendered card for a record and
 * offers it as a download. Records without a photo still get a card
 * (the server draws a placeholder); an absent id shows a not-found
 * message instead of an image.
 */
import { ApiClient, RecordKind } from "./api.js";
export declare function buildCardPage(api: ApiClient, kind: RecordKind, id: number): HTMLElement;
