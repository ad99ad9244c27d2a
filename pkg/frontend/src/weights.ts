/** Weight bar: one row per metric, bar width proportional to the weight and
 * the label carrying the server's value unmodified (String(w), no rounding,
 * no renormalization). */
export function renderWeightBar(names: string[], weights: number[]): HTMLElement {
  const container = document.createElement("div");
  container.className = "weight-bar";
  weights.forEach((weight, k) => {
    const row = document.createElement("div");
    row.className = "weight-row";

    const label = document.createElement("span");
    label.className = "weight-name";
    label.textContent = names[k] ?? `f${k + 1}`;

    const track = document.createElement("div");
    track.className = "weight-track";
    const fill = document.createElement("div");
    fill.className = "weight-fill";
    fill.style.width = `${weight * 100}%`;
    track.append(fill);

    const value = document.createElement("span");
    value.className = "weight-value";
    value.dataset.weight = String(weight);
    value.textContent = String(weight);

    row.append(label, track, value);
    container.append(row);
  });
  return container;
}
