/** Client-side field validation driven by server-published bounds.
 *
 * No numeric bound or enumeration lives in this source file: everything
 * comes from GET /api/meta/validation, so the client can never drift
 * ahead of (or behind) what the server enforces. The server remains
 * authoritative; these checks only gate the submit button.
 */
import type { ValidationMeta } from "./api.js";
/** Null when the value is acceptable, else a short message for the field. */
export declare function checkField(meta: ValidationMeta, field: string, value: string): string | null;
/** Validate a whole form; returns field -> message for every bad field. */
export declare function checkForm(meta: ValidationMeta, kind: "employees" | "students", values: Record<string, string>): Record<string, string>;
/** Convert form strings to the JSON payload the API expects. */
export declare function toPayload(meta: ValidationMeta, kind: "employees" | "students", values: Record<string, string>): Record<string, unknown>;
