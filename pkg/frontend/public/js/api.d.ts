/** Thin typed client for the rollcall HTTP API.
 *
 * Every call goes through the server; the client holds no state beyond
 * the bearer token. Errors carry the server's machine code and, for
 * validation failures, the offending field name.
 */
import type { CropBox } from "./autocrop.js";
export type RecordKind = "employees" | "students";
export interface ValidationMeta {
    text_bounds: Record<string, number>;
    blood_groups: string[];
    semester_range: [number, number];
    fields: Record<RecordKind, string[]>;
    optional_fields: string[];
    max_photo_bytes: number;
}
export interface ListPage {
    items: Record<string, unknown>[];
    total: number;
    page: number;
    limit: number;
}
export declare class ApiError extends Error {
    status: number;
    code: string;
    detail: string;
    field?: string | undefined;
    constructor(status: number, code: string, detail: string, field?: string | undefined);
}
export declare class ApiClient {
    baseUrl: string;
    private token;
    constructor(baseUrl?: string);
    private headers;
    login(user: string, password: string): Promise<void>;
    get authenticated(): boolean;
    health(): Promise<{
        status: string;
        schema_version: number;
    }>;
    validationMeta(): Promise<ValidationMeta>;
    autocropEcho(w: number, h: number, aspectW?: number, aspectH?: number): Promise<CropBox>;
    createRecord(kind: RecordKind, body: Record<string, unknown>): Promise<void>;
    getRecord(kind: RecordKind, id: number): Promise<Record<string, unknown>>;
    updateRecord(kind: RecordKind, id: number, body: Record<string, unknown>): Promise<void>;
    deleteRecord(kind: RecordKind, id: number): Promise<void>;
    listRecords(kind: RecordKind, opts?: {
        page?: number;
        limit?: number;
        filters?: Record<string, string>;
    }): Promise<ListPage>;
    uploadPhoto(kind: RecordKind, id: number, bytes: Blob | ArrayBuffer, box?: CropBox): Promise<{
        width: number;
        height: number;
    }>;
    fetchPhoto(kind: RecordKind, id: number): Promise<ArrayBuffer>;
    fetchIdCard(kind: RecordKind, id: number): Promise<ArrayBuffer>;
}
