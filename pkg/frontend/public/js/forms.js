/** Record form and list pages.
 *
 * The form renders one input per field from the server's field list,
 * validates as the operator types, and keeps submit disabled until the
 * form is clean. Server-side rejections (422 with a field name, 409 on
 * duplicate id) are surfaced on the offending input, so the server's
 * verdict always wins over the client's.
 */
import { ApiError } from "./api.js";
import { checkField, checkForm, toPayload } from "./validation.js";
const LABELS = {
    emp_id: "Employee ID",
    student_id: "Student ID",
    emp_contact_no: "Contact number",
    student_contact_no: "Contact number",
    aicte_course_id: "AICTE course ID",
    dept: "Department",
};
function labelFor(field) {
    if (LABELS[field])
        return LABELS[field];
    return field.replace(/_/g, " ").replace(/^./, (c) => c.toUpperCase());
}
export function idField(kind) {
    return kind === "employees" ? "emp_id" : "student_id";
}
export function buildForm(meta, kind, api, onSaved, existing) {
    const form = document.createElement("form");
    form.className = "record-form";
    const inputs = {};
    const errs = {};
    for (const field of meta.fields[kind]) {
        const row = document.createElement("div");
        row.className = "field-row";
        const label = document.createElement("label");
        label.textContent = labelFor(field);
        label.htmlFor = `f-${field}`;
        let input;
        if (field === "blood_group") {
            const select = document.createElement("select");
            for (const group of meta.blood_groups) {
                const opt = document.createElement("option");
                opt.value = group;
                opt.textContent = group;
                select.append(opt);
            }
            input = select;
        }
        else {
            const el = document.createElement("input");
            el.type = field.startsWith("date_") ? "date" : "text";
            const bound = meta.text_bounds[field];
            if (bound !== undefined)
                el.maxLength = bound + 1; // let bound+1 in so the error is visible
            input = el;
        }
        input.id = `f-${field}`;
        input.name = field;
        const err = document.createElement("span");
        err.className = "field-error";
        err.dataset.field = field;
        input.addEventListener("input", () => {
            const message = checkField(meta, field, input.value);
            err.textContent = message ?? "";
            refreshSubmit();
        });
        row.append(label, input, err);
        form.append(row);
        inputs[field] = input;
        errs[field] = err;
    }
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = existing ? "Save changes" : "Create record";
    const formError = document.createElement("p");
    formError.className = "form-error";
    form.append(submit, formError);
    const values = () => {
        const out = {};
        for (const [field, input] of Object.entries(inputs))
            out[field] = input.value;
        return out;
    };
    const refreshSubmit = () => {
        submit.disabled = Object.keys(checkForm(meta, kind, values())).length > 0;
    };
    const setValues = (vals) => {
        for (const [field, input] of Object.entries(inputs)) {
            if (field in vals)
                input.value = vals[field];
            input.dispatchEvent(new Event("input"));
        }
    };
    if (existing) {
        const vals = {};
        for (const [k, v] of Object.entries(existing))
            vals[k] = v === null ? "" : String(v);
        setValues(vals);
        const idInput = inputs[idField(kind)];
        idInput.toggleAttribute("readonly", true);
    }
    refreshSubmit();
    form.addEventListener("submit", async (ev) => {
        ev.preventDefault();
        formError.textContent = "";
        const payload = toPayload(meta, kind, values());
        const id = Number(values()[idField(kind)]);
        try {
            if (existing) {
                await api.updateRecord(kind, id, payload);
            }
            else {
                await api.createRecord(kind, payload);
            }
            onSaved(id);
        }
        catch (e) {
            if (e instanceof ApiError) {
                const field = e.code === "duplicate_id" ? idField(kind) : e.field;
                if (field && errs[field]) {
                    errs[field].textContent = e.detail;
                }
                else {
                    formError.textContent = e.detail;
                }
            }
            else {
                formError.textContent = String(e);
            }
        }
    });
    return { root: form, setValues, values };
}
const LIST_FILTERS = {
    employees: ["dept", "designation", "employment_type"],
    students: ["branch", "session", "semester"],
};
export function buildList(meta, kind, api, onOpen) {
    const root = document.createElement("section");
    root.className = "record-list";
    const controls = document.createElement("div");
    controls.className = "list-controls";
    const filterInputs = {};
    for (const field of LIST_FILTERS[kind]) {
        const input = document.createElement("input");
        input.placeholder = labelFor(field);
        input.name = field;
        filterInputs[field] = input;
        controls.append(input);
    }
    const applyBtn = document.createElement("button");
    applyBtn.textContent = "Filter";
    controls.append(applyBtn);
    const table = document.createElement("table");
    const pager = document.createElement("div");
    pager.className = "pager";
    const prev = document.createElement("button");
    prev.textContent = "Prev";
    const next = document.createElement("button");
    next.textContent = "Next";
    const status = document.createElement("span");
    pager.append(prev, status, next);
    root.append(controls, table, pager);
    let page = 1;
    const limit = 20;
    const refresh = async () => {
        const filters = {};
        for (const [field, input] of Object.entries(filterInputs)) {
            if (input.value !== "")
                filters[field] = input.value;
        }
        const result = await api.listRecords(kind, { page, limit, filters });
        table.replaceChildren();
        const header = document.createElement("tr");
        for (const field of meta.fields[kind]) {
            const th = document.createElement("th");
            th.textContent = labelFor(field);
            header.append(th);
        }
        table.append(header);
        for (const item of result.items) {
            const tr = document.createElement("tr");
            for (const field of meta.fields[kind]) {
                const td = document.createElement("td");
                const v = item[field];
                td.textContent = v === null || v === undefined ? "" : String(v);
                tr.append(td);
            }
            tr.addEventListener("click", () => onOpen(Number(item[idField(kind)])));
            table.append(tr);
        }
        const pages = Math.max(1, Math.ceil(result.total / limit));
        status.textContent = `page ${page} of ${pages} (${result.total} records)`;
        prev.disabled = page <= 1;
        next.disabled = page >= pages;
    };
    applyBtn.addEventListener("click", () => {
        page = 1;
        void refresh();
    });
    prev.addEventListener("click", () => {
        page -= 1;
        void refresh();
    });
    next.addEventListener("click", () => {
        page += 1;
        void refresh();
    });
    void refresh();
    return root;
}
//# sourceMappingURL=forms.js.map