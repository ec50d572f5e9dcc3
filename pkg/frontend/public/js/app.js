/** Page shell: login, navigation, and mounting of the form, list,
 * capture, and card views. All durable state lives on the server; a
 * hard refresh only loses unsubmitted form contents.
 */
import { ApiClient } from "./api.js";
import { buildCardPage } from "./card.js";
import { CapturePanel } from "./capture.js";
import { buildForm, buildList } from "./forms.js";
export class App {
    constructor(root) {
        this.root = root;
        this.api = new ApiClient("");
        this.meta = null;
        this.activeCapture = null;
        this.main = document.createElement("main");
    }
    async start() {
        this.root.replaceChildren(this.loginView());
    }
    loginView() {
        const form = document.createElement("form");
        form.className = "login-form";
        const user = document.createElement("input");
        user.placeholder = "User";
        user.autocomplete = "username";
        const password = document.createElement("input");
        password.type = "password";
        password.placeholder = "Password";
        password.autocomplete = "current-password";
        const submit = document.createElement("button");
        submit.textContent = "Sign in";
        const error = document.createElement("p");
        error.className = "form-error";
        form.append(user, password, submit, error);
        form.addEventListener("submit", async (ev) => {
            ev.preventDefault();
            try {
                await this.api.login(user.value, password.value);
                this.meta = await this.api.validationMeta();
                this.mountShell();
            }
            catch (e) {
                error.textContent = String(e);
            }
        });
        return form;
    }
    mountShell() {
        const nav = document.createElement("nav");
        for (const kind of ["employees", "students"]) {
            const listBtn = document.createElement("button");
            listBtn.textContent = `${kind[0].toUpperCase()}${kind.slice(1)}`;
            listBtn.addEventListener("click", () => this.showList(kind));
            const newBtn = document.createElement("button");
            newBtn.textContent = `New ${kind.slice(0, -1)}`;
            newBtn.addEventListener("click", () => this.showForm(kind));
            nav.append(listBtn, newBtn);
        }
        this.root.replaceChildren(nav, this.main);
        this.showList("employees");
    }
    swap(view) {
        this.activeCapture?.dispose();
        this.activeCapture = null;
        this.main.replaceChildren(view);
    }
    showList(kind) {
        this.swap(buildList(this.meta, kind, this.api, (id) => this.showDetail(kind, id)));
    }
    showForm(kind, existing) {
        const handle = buildForm(this.meta, kind, this.api, (id) => {
            this.showDetail(kind, id);
        }, existing);
        this.swap(handle.root);
    }
    async showDetail(kind, id) {
        const record = await this.api.getRecord(kind, id);
        const wrap = document.createElement("div");
        const handle = buildForm(this.meta, kind, this.api, () => this.showList(kind), record);
        this.activeCapture?.dispose();
        this.activeCapture = new CapturePanel(this.api, kind, id);
        const cardBtn = document.createElement("button");
        cardBtn.textContent = "ID card";
        cardBtn.addEventListener("click", () => this.swap(buildCardPage(this.api, kind, id)));
        wrap.append(handle.root, this.activeCapture.root, cardBtn);
        this.main.replaceChildren(wrap);
    }
}
if (typeof document !== "undefined") {
    const mount = document.getElementById("app");
    if (mount)
        void new App(mount).start();
}
//# sourceMappingURL=app.js.map