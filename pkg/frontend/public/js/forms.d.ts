/** Record form and list pages.
 *
 * The form renders one input per field from the server's field list,
 * validates as the operator types, and keeps submit disabled until the
 * form is clean. Server-side rejections (422 with a field name, 409 on
 * duplicate id) are surfaced on the offending input, so the server's
 * verdict always wins over the client's.
 */
import { ApiClient, RecordKind, ValidationMeta } from "./api.js";
export declare function idField(kind: RecordKind): string;
export interface FormHandle {
    root: HTMLFormElement;
    setValues(values: Record<string, string>): void;
    values(): Record<string, string>;
}
export declare function buildForm(meta: ValidationMeta, kind: RecordKind, api: ApiClient, onSaved: (id: number) => void, existing?: Record<string, unknown>): FormHandle;
export declare function buildList(meta: ValidationMeta, kind: RecordKind, api: ApiClient, onOpen: (id: number) => void): HTMLElement;
