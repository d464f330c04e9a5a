/** DOM rendering. Re-renders the dynamic regions from the store's state;
 * all interaction is delegated back to the store. */
import { layoutDiagram } from "./arcs.js";
import { unresolvedTokenIds } from "./state.js";
const SVG_NS = "http://www.w3.org/2000/svg";
function el(tag, attrs = {}, children = []) {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs))
        node.setAttribute(key, value);
    for (const child of children)
        node.append(child);
    return node;
}
function svg(tag, attrs = {}) {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs))
        node.setAttribute(key, value);
    return node;
}
function show(value) {
    return value === null || value === undefined ? "_" : String(value);
}
function subLine(token) {
    const gloss = token.misc.find(([key]) => key === "Gloss")?.[1] ?? null;
    const parts = [gloss, token.lang].filter((part) => !!part);
    return parts.length ? parts.join(" · ") : null;
}
function toDiagram(tokens) {
    const arcTokens = tokens.map((token) => ({
        id: token.id,
        form: token.form,
        sub: subLine(token),
    }));
    const edges = tokens
        .filter((token) => token.head !== null && token.head > 0)
        .map((token) => ({ head: token.head, dependent: token.id, label: token.deprel }));
    const root = tokens.find((token) => token.head === 0);
    return layoutDiagram(arcTokens, edges, root ? root.id : null);
}
function renderDiagram(store, detail, tokens, who) {
    const layout = toDiagram(tokens);
    const recordIds = new Set(detail.records.map((r) => r.token_id));
    const resolvedIds = new Set(detail.resolutions.map((r) => r.token_id));
    const selected = store.state.selection;
    const root = svg("svg", {
        viewBox: `0 0 ${layout.width} ${layout.height}`,
        width: String(layout.width),
        height: String(layout.height),
        class: "arc-diagram",
        role: "img",
    });
    for (const arc of layout.arcs) {
        root.append(svg("path", { d: arc.path, class: "arc" }));
        const label = svg("text", {
            x: String(arc.apex.x),
            y: String(arc.apex.y - 4),
            class: "arc-label",
            "text-anchor": "middle",
        });
        label.textContent = arc.label;
        root.append(label);
    }
    if (layout.root) {
        root.append(svg("path", { d: layout.root.path, class: "arc arc-root" }));
        const label = svg("text", {
            x: String(layout.root.labelBox.x + layout.root.labelBox.width / 2),
            y: String(layout.root.labelBox.y + layout.root.labelBox.height - 2),
            class: "arc-label",
            "text-anchor": "middle",
        });
        label.textContent = "root";
        root.append(label);
    }
    for (const token of layout.tokens) {
        const classes = ["tok"];
        if (recordIds.has(token.id)) {
            classes.push(resolvedIds.has(token.id) ? "tok-resolved" : "tok-disagree");
        }
        if (token.id === selected)
            classes.push("tok-selected");
        const group = svg("g", { class: classes.join(" ") });
        const form = svg("text", {
            x: String(token.centerX),
            y: String(token.formBox.y + 12),
            "text-anchor": "middle",
            class: "tok-form",
        });
        form.textContent = token.form;
        group.append(form);
        if (token.sub && token.subBox) {
            const sub = svg("text", {
                x: String(token.centerX),
                y: String(token.subBox.y + 10),
                "text-anchor": "middle",
                class: "tok-sub",
            });
            sub.textContent = token.sub;
            group.append(sub);
        }
        if (recordIds.has(token.id)) {
            group.addEventListener("click", () => store.select(token.id));
        }
        root.append(group);
    }
    return el("figure", { class: "tree" }, [
        el("figcaption", {}, [who]),
        root,
    ]);
}
function valueRow(field, a, b, differs) {
    return el("tr", { class: differs ? "differs" : "" }, [
        el("th", {}, [field]),
        el("td", {}, [a]),
        el("td", {}, [b]),
    ]);
}
function renderPanel(store, detail, record) {
    const tokenId = record.token_id;
    const tokenA = detail.tokens_a.find((t) => t.id === tokenId);
    const tokenB = detail.tokens_b.find((t) => t.id === tokenId);
    const resolution = detail.resolutions.find((r) => r.token_id === tokenId);
    const [nameA, nameB] = store.state.session?.annotators ?? ["A", "B"];
    const pending = store.state.pendingRequest;
    const table = el("table", { class: "values" }, [
        el("tr", {}, [el("th", {}, [""]), el("th", {}, [nameA]), el("th", {}, [nameB])]),
        valueRow("upos", show(tokenA.upos), show(tokenB.upos), record.fields.includes("upos")),
        valueRow("head", show(tokenA.head), show(tokenB.head), record.fields.includes("head")),
        valueRow("deprel", tokenA.deprel, tokenB.deprel, record.fields.includes("deprel")),
    ]);
    const note = el("input", {
        type: "text", placeholder: "note (optional)", class: "note", id: "note-input",
    });
    const takeA = el("button", {}, [`Take ${nameA} (a)`]);
    takeA.addEventListener("click", () => void store.submitResolution("take_a", undefined, note.value || undefined));
    const takeB = el("button", {}, [`Take ${nameB} (b)`]);
    takeB.addEventListener("click", () => void store.submitResolution("take_b", undefined, note.value || undefined));
    const upos = el("input", { type: "text", value: show(tokenA.upos), size: "6" });
    const head = el("input", { type: "text", value: show(tokenA.head), size: "3" });
    const deprel = el("input", { type: "text", value: tokenA.deprel, size: "10" });
    const applyCustom = el("button", {}, ["Apply custom"]);
    applyCustom.addEventListener("click", () => {
        void store.submitResolution("custom", {
            upos: upos.value === "_" || upos.value === "" ? null : upos.value,
            head: Number(head.value),
            deprel: deprel.value,
        }, note.value || undefined);
    });
    const buttons = el("div", { class: "actions" }, [takeA, takeB]);
    if (resolution) {
        const unresolve = el("button", { class: "danger" }, ["Unresolve"]);
        unresolve.addEventListener("click", () => void store.removeResolution(tokenId));
        buttons.append(unresolve);
    }
    for (const button of buttons.querySelectorAll("button")) {
        if (pending)
            button.setAttribute("disabled", "disabled");
    }
    if (pending)
        applyCustom.setAttribute("disabled", "disabled");
    const children = [
        el("h3", {}, [`Token ${tokenId} "${tokenA.form}"`]),
        table,
        buttons,
        el("div", { class: "custom" }, [
            el("label", {}, ["upos ", upos]),
            el("label", {}, ["head ", head]),
            el("label", {}, ["deprel ", deprel]),
            applyCustom,
        ]),
        note,
    ];
    if (resolution) {
        children.push(el("p", { class: "resolution-state" }, [
            `resolved: ${resolution.choice}` +
                (resolution.note ? ` — ${resolution.note}` : ""),
        ]));
    }
    return el("section", { class: "panel" }, children);
}
function renderSidebar(store) {
    const filter = el("select", { id: "filter" }, []);
    for (const option of ["all", "disagreeing", "unresolved"]) {
        const node = el("option", { value: option }, [option]);
        if (store.state.filter === option)
            node.setAttribute("selected", "selected");
        filter.append(node);
    }
    filter.addEventListener("change", () => {
        store.setFilter(filter.value);
    });
    const list = el("ul", { class: "sentences" });
    for (const summary of store.visibleSentences()) {
        const classes = ["sentence"];
        if (summary.index === store.state.sentenceIndex)
            classes.push("active");
        if (summary.record_count > summary.resolved_count)
            classes.push("open");
        const item = el("li", { class: classes.join(" ") }, [
            el("span", { class: "sid" }, [summary.sent_id]),
            el("span", { class: "counts" }, [`${summary.resolved_count}/${summary.record_count}`]),
            el("span", { class: "snippet" }, [summary.text]),
        ]);
        item.addEventListener("click", () => void store.gotoSentence(summary.index));
        list.append(item);
    }
    return el("aside", {}, [el("label", {}, ["show ", filter]), list]);
}
function renderHeader(store) {
    const { session, progress } = store.state;
    const title = el("div", { class: "title" }, [
        el("h1", {}, ["spokenud adjudication"]),
        el("span", { class: "annotators" }, [session ? session.annotators.join(" vs ") : ""]),
    ]);
    const bar = el("div", { class: "bar" });
    if (progress && progress.total > 0) {
        const filled = el("div", { class: "bar-fill" });
        filled.style.width = `${(100 * progress.resolved) / progress.total}%`;
        bar.append(filled);
    }
    const scores = progress
        ? `resolved ${progress.resolved}/${progress.total} · ` +
            `POS ${progress.provisional.pos.toFixed(1)} · ` +
            `UAS ${progress.provisional.uas.toFixed(1)} · ` +
            `LAS ${progress.provisional.las.toFixed(1)}`
        : "";
    const partial = el("input", { type: "checkbox", id: "allow-partial" });
    const exportButton = el("button", {}, ["Export gold"]);
    exportButton.addEventListener("click", () => {
        void store.exportGold(partial.checked).then((text) => {
            if (text === null)
                return;
            const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
            const link = el("a", {
                href: URL.createObjectURL(blob),
                download: "gold.conllu",
            });
            link.click();
            URL.revokeObjectURL(link.href);
        });
    });
    return el("header", {}, [
        title,
        el("div", { class: "progress" }, [bar, el("span", {}, [scores])]),
        el("div", { class: "export" }, [
            el("label", {}, [partial, " allow partial"]),
            exportButton,
        ]),
    ]);
}
function renderError(store) {
    const error = store.state.error;
    if (!error)
        return null;
    const children = [
        el("strong", {}, [error.code]),
        ` ${error.message} `,
    ];
    if (error.code === "UNRESOLVED_REMAIN") {
        const jump = el("button", {}, ["show unresolved"]);
        jump.addEventListener("click", () => {
            store.setFilter("unresolved");
            store.clearError();
        });
        children.push(jump);
    }
    const dismiss = el("button", { class: "dismiss" }, ["×"]);
    dismiss.addEventListener("click", () => store.clearError());
    children.push(dismiss);
    return el("div", { class: "error-banner", role: "alert" }, children);
}
export function render(root, store) {
    root.replaceChildren();
    root.append(renderHeader(store));
    const main = el("main", {});
    const banner = renderError(store);
    if (banner)
        main.append(banner);
    const detail = store.state.detail;
    if (detail) {
        const open = unresolvedTokenIds(detail).length;
        main.append(el("h2", {}, [
            `${detail.sent_id} — ${detail.text}`,
            el("span", { class: "badge" }, [detail.record_count === 0
                    ? "no disagreements"
                    : `${open} unresolved of ${detail.record_count}`]),
        ]));
        const [nameA, nameB] = store.state.session?.annotators ?? ["A", "B"];
        main.append(renderDiagram(store, detail, detail.tokens_a, nameA));
        main.append(renderDiagram(store, detail, detail.tokens_b, nameB));
        const selected = store.state.selection;
        const record = selected === null ? undefined : store.recordFor(selected);
        if (record) {
            main.append(renderPanel(store, detail, record));
        }
        else if (detail.record_count > 0) {
            main.append(el("p", { class: "hint" }, ["Click a highlighted token to resolve it (a / b / n)."]));
        }
    }
    else if (!store.state.error) {
        main.append(el("p", {}, ["loading…"]));
    }
    root.append(el("div", { class: "layout" }, [renderSidebar(store), main]));
}
