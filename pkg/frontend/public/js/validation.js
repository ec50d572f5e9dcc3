/** Client-side field validation driven by server-published bounds.
 *
 * No numeric bound or enumeration lives in this source file: everything
 * comes from GET /api/meta/validation, so the client can never drift
 * ahead of (or behind) what the server enforces. The server remains
 * authoritative; these checks only gate the submit button.
 */
const DATE_FIELDS = new Set(["date_of_birth", "date_of_joining", "date_of_admission"]);
const INT_FIELDS = new Set([
    "emp_id",
    "student_id",
    "years_of_experience",
    "aicte_course_id",
    "semester",
]);
const CONTACT_FIELDS = new Set(["emp_contact_no", "student_contact_no"]);
const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;
const DIGITS = /^\d+$/;
/** Null when the value is acceptable, else a short message for the field. */
export function checkField(meta, field, value) {
    const optional = meta.optional_fields.includes(field);
    if (value === "") {
        return optional ? null : "required";
    }
    if (INT_FIELDS.has(field)) {
        if (!DIGITS.test(value))
            return "must be a whole number";
        if (field === "semester") {
            const [lo, hi] = meta.semester_range;
            const n = Number(value);
            if (n < lo || n > hi)
                return `must be between ${lo} and ${hi}`;
        }
        return null;
    }
    if (DATE_FIELDS.has(field)) {
        if (!ISO_DATE.test(value) || Number.isNaN(Date.parse(value))) {
            return "must be a date (YYYY-MM-DD)";
        }
        return null;
    }
    if (CONTACT_FIELDS.has(field)) {
        if (!DIGITS.test(value))
            return "digits only";
        const bound = meta.text_bounds[field];
        if (bound !== undefined && value.length > bound)
            return `at most ${bound} digits`;
        return null;
    }
    if (field === "blood_group") {
        if (!meta.blood_groups.includes(value)) {
            return `must be one of ${meta.blood_groups.join(", ")}`;
        }
        return null;
    }
    const bound = meta.text_bounds[field];
    if (bound !== undefined && value.length > bound) {
        return `at most ${bound} characters`;
    }
    return null;
}
/** Validate a whole form; returns field -> message for every bad field. */
export function checkForm(meta, kind, values) {
    const errors = {};
    for (const field of meta.fields[kind]) {
        const err = checkField(meta, field, values[field] ?? "");
        if (err !== null)
            errors[field] = err;
    }
    return errors;
}
/** Convert form strings to the JSON payload the API expects. */
export function toPayload(meta, kind, values) {
    const payload = {};
    for (const field of meta.fields[kind]) {
        const raw = values[field] ?? "";
        if (raw === "" && meta.optional_fields.includes(field))
            continue;
        payload[field] = INT_FIELDS.has(field) ? Number(raw) : raw;
    }
    return payload;
}
//# sourceMappingURL=validation.js.map