/** DOM wiring for the what-if explorer. */
import { ApiClient, ApiError } from "./api.js";
import { maxAbsDelta, renderPitSvg } from "./chart.js";
import { ScenarioState, WhatIfRunner } from "./scenario.js";
import { PortfolioEditor, validateCell } from "./table.js";
const api = new ApiClient();
let scenario = new ScenarioState();
let editor = null;
let lastResponse = null;
const $ = (id) => {
    const el = document.getElementById(id);
    if (!el)
        throw new Error(`missing element #${id}`);
    return el;
};
function showBanner(message) {
    const banner = $("banner");
    banner.textContent = message ?? "";
    banner.classList.toggle("hidden", message === null);
}
const runner = new WhatIfRunner((req) => api.whatif(req), (resp) => {
    lastResponse = resp;
    showBanner(null);
    renderCharts(resp.baseline, resp.scenario);
}, (err) => {
    showBanner(err instanceof ApiError ? err.message : String(err));
});
function renderCharts(baseline, scenarioPit) {
    // shared scale so the two charts are visually comparable
    const maxAbs = Math.max(maxAbsDelta(baseline), maxAbsDelta(scenarioPit));
    $("baseline-chart").innerHTML = renderPitSvg(baseline, "Baseline", { maxAbsValue: maxAbs });
    $("scenario-chart").innerHTML = renderPitSvg(scenarioPit, "Scenario", { maxAbsValue: maxAbs });
    attachHover($("baseline-chart"));
    attachHover($("scenario-chart"));
}
function attachHover(container) {
    const tooltip = $("tooltip");
    container.querySelectorAll("g.pit-row").forEach((g) => {
        g.addEventListener("mousemove", (ev) => {
            tooltip.textContent = g.dataset.tip ?? "";
            tooltip.style.left = `${ev.pageX + 12}px`;
            tooltip.style.top = `${ev.pageY + 12}px`;
            tooltip.classList.remove("hidden");
        });
        g.addEventListener("mouseleave", () => tooltip.classList.add("hidden"));
    });
}
function renderControls() {
    const tbody = $("controls-body");
    tbody.innerHTML = "";
    for (const id of scenario.projectIds) {
        const t = scenario.togglesFor(id);
        const tr = document.createElement("tr");
        tr.innerHTML = `<td>${id}</td>
      <td><input type="checkbox" data-role="exclude" data-id="${id}" ${t.excluded ? "checked" : ""}></td>
      <td><input type="checkbox" data-role="force" data-id="${id}" ${t.forceSuccess ? "checked" : ""}></td>`;
        tbody.appendChild(tr);
    }
    tbody.querySelectorAll("input[type=checkbox]").forEach((box) => {
        box.addEventListener("change", () => {
            const id = box.dataset.id ?? "";
            if (box.dataset.role === "exclude")
                scenario.setExcluded(id, box.checked);
            else
                scenario.setForceSuccess(id, box.checked);
            runner.trigger(scenario);
        });
    });
}
function renderEditor(doc) {
    editor = new PortfolioEditor(doc);
    const table = $("editor-table");
    const phaseIds = ["Ph1", "Ph2", "Ph3", "Reg"];
    const head = ["project", ...phaseIds.flatMap((p) => [`${p} yrs`, `${p} cost`, `${p} pos`]), "peak sales"];
    let html = `<tr>${head.map((h) => `<th>${h}</th>`).join("")}</tr>`;
    for (const project of doc.projects) {
        html += `<tr><td>${project.id}</td>`;
        for (const phaseId of phaseIds) {
            const phase = project.phases.find((ph) => ph.phase === phaseId);
            if (!phase) {
                html += "<td>-</td><td>-</td><td>-</td>";
                continue;
            }
            for (const [attr, value] of [
                ["duration", phase.duration],
                ["cost", phase.cost],
                ["pos", phase.pos],
            ]) {
                html += `<td><input data-project="${project.id}" data-field="${phaseId}.${attr}" value="${value}"></td>`;
            }
        }
        html += `<td><input data-project="${project.id}" data-field="peak_sales" value="${project.peak_sales}"></td></tr>`;
    }
    table.innerHTML = html;
    table.querySelectorAll("input").forEach((input) => {
        input.addEventListener("input", () => {
            const project = input.dataset.project ?? "";
            const field = input.dataset.field ?? "";
            editor?.edit(project, field, input.value);
            const error = validateCell(field, input.value);
            input.classList.toggle("invalid", error !== null);
            input.title = error ?? "";
            updateApplyButton();
        });
    });
    updateApplyButton();
}
function updateApplyButton() {
    $("apply-btn").disabled = !(editor?.canApply ?? false);
}
async function applyEdits() {
    if (!editor?.canApply)
        return;
    try {
        await api.putPortfolio(editor.buildDoc());
        const { portfolio } = await api.getPortfolio();
        editor.committed(portfolio);
        scenario.reset(portfolio.projects.map((p) => p.id));
        renderControls();
        renderEditor(portfolio);
        runner.trigger(scenario);
    }
    catch (err) {
        if (err instanceof ApiError && err.diagnostics.length > 0) {
            editor.applyServerDiagnostics(err.diagnostics);
            showBanner(err.diagnostics.map((d) => `[${d.project_id}] ${d.field}: ${d.message}`).join("; "));
        }
        else {
            showBanner(String(err));
        }
    }
}
async function init() {
    const { portfolio } = await api.getPortfolio();
    scenario = new ScenarioState(portfolio.projects.map((p) => p.id));
    renderControls();
    renderEditor(portfolio);
    $("metric-select").addEventListener("change", (ev) => {
        scenario.metric = ev.target.value;
        runner.trigger(scenario);
    });
    $("apply-btn").addEventListener("click", () => void applyEdits());
    $("cancel-btn").addEventListener("click", () => {
        editor?.cancel();
        renderEditor(editor?.doc ?? portfolio);
    });
    await runner.run(scenario.toRequest());
}
document.addEventListener("DOMContentLoaded", () => {
    void init().catch((err) => showBanner(String(err)));
});
// for console debugging
window.pitplotUi = {
    get scenario() {
        return scenario;
    },
    get lastResponse() {
        return lastResponse;
    },
};
