/** Page shell: login, navigation, and mounting of the form, list,
 * capture, and card views. All durable state lives on the server; a
 * hard refresh only loses unsubmitted form contents.
 */
export declare class App {
    private root;
    private api;
    private meta;
    private main;
    private activeCapture;
    constructor(root: HTMLElement);
    start(): Promise<void>;
    private loginView;
    private mountShell;
    private swap;
    private showList;
    private showForm;
    private showDetail;
}
