/** Client-side PIT chart: pure geometry from service PitData, then SVG.
 * Every number displayed is taken verbatim from the service response. */
const MARGIN = { left: 70, right: 20, top: 36, bottom: 16 };
export function maxAbsDelta(pit) {
    let m = 0;
    for (const r of pit.rows) {
        m = Math.max(m, Math.abs(r.delta_exclusion));
        if (r.delta_success !== null)
            m = Math.max(m, Math.abs(r.delta_success));
    }
    return m;
}
export function computePitLayout(pit, opts = {}) {
    const width = opts.width ?? 560;
    const height = opts.height ?? 420;
    const plotW = width - MARGIN.left - MARGIN.right;
    const plotH = height - MARGIN.top - MARGIN.bottom;
    const centerX = MARGIN.left + plotW / 2;
    const maxAbs = (opts.maxAbsValue ?? maxAbsDelta(pit)) || 1;
    const scale = plotW / 2 / (maxAbs * 1.1);
    const rowH = plotH / Math.max(pit.rows.length, 1);
    const barH = Math.min(rowH * 0.32, 14);
    const rows = pit.rows.map((row, i) => {
        const y0 = MARGIN.top + i * rowH;
        const bar = (value, offset) => ({
            x: value >= 0 ? centerX : centerX - Math.abs(value) * scale,
            y: y0 + offset,
            width: Math.abs(value) * scale,
            height: barH,
            value,
        });
        return {
            projectId: row.project_id,
            exclusion: bar(row.delta_exclusion, rowH * 0.12),
            success: row.delta_success === null ? null : bar(row.delta_success, rowH * 0.12 + barH + 2),
            labelY: y0 + rowH / 2,
            row,
        };
    });
    return {
        width,
        height,
        centerX,
        plotTop: MARGIN.top,
        plotBottom: MARGIN.top + plotH,
        rows,
    };
}
function esc(s) {
    return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
export function formatDelta(value, decimals = 4) {
    if (value === null)
        return "n/a";
    return (value >= 0 ? "+" : "") + value.toFixed(decimals);
}
export function renderPitSvg(pit, title, opts = {}) {
    const layout = computePitLayout(pit, opts);
    const parts = [];
    parts.push(`<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" class="pit-chart">`);
    parts.push(`<text x="${MARGIN.left}" y="20" class="chart-title">${esc(title)} ` +
        `(${esc(pit.metric)} ${pit.center_value.toFixed(4)})</text>`);
    parts.push(`<line x1="${layout.centerX}" y1="${layout.plotTop}" x2="${layout.centerX}" ` +
        `y2="${layout.plotBottom}" class="center-line"/>`);
    for (const row of layout.rows) {
        const tip = `${row.projectId}: exclusion ${formatDelta(row.row.delta_exclusion)}, ` +
            `success ${formatDelta(row.row.delta_success)}`;
        parts.push(`<g class="pit-row" data-project="${esc(row.projectId)}" data-tip="${esc(tip)}">`);
        parts.push(`<text x="8" y="${row.labelY.toFixed(1)}" class="row-label">${esc(row.projectId)}</text>`);
        const b = row.exclusion;
        parts.push(`<rect class="bar-exclusion" x="${b.x.toFixed(1)}" y="${b.y.toFixed(1)}" ` +
            `width="${b.width.toFixed(1)}" height="${b.height.toFixed(1)}"/>`);
        if (row.success) {
            const s = row.success;
            parts.push(`<rect class="bar-success" x="${s.x.toFixed(1)}" y="${s.y.toFixed(1)}" ` +
                `width="${s.width.toFixed(1)}" height="${s.height.toFixed(1)}"/>`);
        }
        else {
            parts.push(`<text x="${(layout.centerX + 6).toFixed(1)}" y="${(row.exclusion.y + 22).toFixed(1)}" ` +
                `class="bar-missing">n/a</text>`);
        }
        parts.push("</g>");
    }
    parts.push("</svg>");
    return parts.join("\n");
}
