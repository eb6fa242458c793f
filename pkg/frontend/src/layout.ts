/** The four fixed control groups, in their fixed tab order. */

export const GROUP_ORDER = [
  "input_output",
  "data_display",
  "data_operations",
  "data_configurations",
] as const;

export type GroupName = (typeof GROUP_ORDER)[number];

/** A labeled region; all of a view's controls live in exactly one group. */
export function createGroup(view: string, name: GroupName): HTMLElement {
  const section = document.createElement("section");
  section.className = `group group-${name}`;
  section.dataset.group = name;
  const headingId = `${view}-${name}-heading`;
  const heading = document.createElement("h2");
  heading.id = headingId;
  heading.dataset.i18n = `group.${name}`;
  section.append(heading);
  section.setAttribute("role", "group");
  section.setAttribute("aria-labelledby", headingId);
  return section;
}

let idCounter = 0;

/** A labeled form control wrapped with its <label>. */
export function labeledControl<T extends HTMLElement>(
  control: T,
  labelKey: string,
): { wrapper: HTMLElement; control: T } {
  const wrapper = document.createElement("div");
  wrapper.className = "field";
  const label = document.createElement("label");
  label.dataset.i18n = labelKey;
  const id = `ctl-${idCounter++}`;
  control.id = id;
  label.htmlFor = id;
  wrapper.append(label, control);
  return { wrapper, control };
}

export function button(labelKey: string, onClick: () => void): HTMLButtonElement {
  const el = document.createElement("button");
  el.type = "button";
  el.dataset.i18n = labelKey;
  el.addEventListener("click", onClick);
  return el;
}

export function option(value: string, labelKey: string): HTMLOptionElement {
  const el = document.createElement("option");
  el.value = value;
  el.dataset.i18n = labelKey;
  return el;
}
