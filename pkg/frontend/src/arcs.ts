/** Arc-diagram layout for one dependency tree.
 *
 * Pure geometry: tokens on a baseline, labeled arcs above them, arc height
 * proportional to the head-dependent distance, each label centered at its
 * arc's apex. All text gets a bounding box so the no-overlap guarantee
 * (labels never intrude into the token band) is checkable in tests.
 */

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface ArcToken {
  id: number;
  form: string;
  /** secondary line under the form (gloss and/or language tag) */
  sub: string | null;
}

export interface ArcEdge {
  head: number; // token id, > 0
  dependent: number;
  label: string;
}

export interface TokenLayout {
  id: number;
  form: string;
  sub: string | null;
  centerX: number;
  formBox: Box;
  subBox: Box | null;
}

export interface ArcLayout {
  head: number;
  dependent: number;
  label: string;
  path: string;
  apex: { x: number; y: number };
  labelBox: Box;
  leftToRight: boolean;
}

export interface RootLayout {
  tokenId: number;
  path: string;
  labelBox: Box;
}

export interface DiagramLayout {
  width: number;
  height: number;
  baseline: number;
  tokens: TokenLayout[];
  arcs: ArcLayout[];
  root: RootLayout | null;
}

export const METRICS = {
  charWidth: 8.6, // monospace token font
  formHeight: 16,
  subCharWidth: 6.2,
  subHeight: 12,
  tokenPad: 7,
  tokenGap: 14,
  labelCharWidth: 6.4,
  labelHeight: 11,
  arcRise: 22, // per unit of head-dependent distance
  arcClearance: 6, // gap between baseline and arc endpoints
  labelGap: 3, // gap between apex and label box
  margin: 12,
};

export function boxesOverlap(a: Box, b: Box): boolean {
  return (
    a.x < b.x + b.width &&
    b.x < a.x + a.width &&
    a.y < b.y + b.height &&
    b.y < a.y + a.height
  );
}

function arcHeight(distance: number): number {
  return METRICS.arcRise * Math.max(1, distance);
}

/** Lay out one tree. Tokens must be ordered; edges reference token ids. */
export function layoutDiagram(
  tokens: ArcToken[],
  edges: ArcEdge[],
  rootId: number | null,
): DiagramLayout {
  const m = METRICS;
  const position = new Map<number, number>();
  tokens.forEach((token, index) => position.set(token.id, index));

  const maxDistance = edges.reduce((acc, edge) => {
    const from = position.get(edge.head);
    const to = position.get(edge.dependent);
    if (from === undefined || to === undefined) return acc;
    return Math.max(acc, Math.abs(from - to));
  }, 1);
  const arcZone = arcHeight(maxDistance) + m.labelHeight + m.labelGap + m.margin;
  const rootZone = m.labelHeight + m.labelGap; // the root marker drops from the top
  const baseline = arcZone + rootZone;

  const laidTokens: TokenLayout[] = [];
  let x = m.margin;
  for (const token of tokens) {
    const formWidth = token.form.length * m.charWidth;
    const subWidth = (token.sub ?? "").length * m.subCharWidth;
    const cell = Math.max(formWidth, subWidth, m.charWidth) + 2 * m.tokenPad;
    const centerX = x + cell / 2;
    laidTokens.push({
      id: token.id,
      form: token.form,
      sub: token.sub,
      centerX,
      formBox: {
        x: centerX - formWidth / 2,
        y: baseline,
        width: formWidth,
        height: m.formHeight,
      },
      subBox: token.sub
        ? {
            x: centerX - subWidth / 2,
            y: baseline + m.formHeight + 2,
            width: subWidth,
            height: m.subHeight,
          }
        : null,
    });
    x += cell + m.tokenGap;
  }
  const width = x - m.tokenGap + m.margin;
  const height = baseline + m.formHeight + m.subHeight + m.margin;

  const byId = new Map(laidTokens.map((token) => [token.id, token]));
  const arcs: ArcLayout[] = [];
  for (const edge of edges) {
    const head = byId.get(edge.head);
    const dependent = byId.get(edge.dependent);
    if (!head || !dependent) continue;
    const distance = Math.abs(
      (position.get(edge.head) ?? 0) - (position.get(edge.dependent) ?? 0));
    const rise = arcHeight(distance);
    const y0 = baseline - m.arcClearance;
    const apexX = (head.centerX + dependent.centerX) / 2;
    const apexY = y0 - rise;
    const labelWidth = edge.label.length * m.labelCharWidth;
    arcs.push({
      head: edge.head,
      dependent: edge.dependent,
      label: edge.label,
      // flat-topped cubic so the label sits on a stable apex
      path:
        `M ${head.centerX} ${y0} ` +
        `C ${head.centerX} ${apexY}, ${dependent.centerX} ${apexY}, ` +
        `${dependent.centerX} ${y0}`,
      apex: { x: apexX, y: apexY },
      labelBox: {
        x: apexX - labelWidth / 2,
        y: apexY - m.labelGap - m.labelHeight,
        width: labelWidth,
        height: m.labelHeight,
      },
      leftToRight: head.centerX < dependent.centerX,
    });
  }

  let root: RootLayout | null = null;
  const rootToken = rootId === null ? undefined : byId.get(rootId);
  if (rootToken) {
    const labelWidth = "root".length * m.labelCharWidth;
    root = {
      tokenId: rootToken.id,
      path: `M ${rootToken.centerX} ${m.labelHeight + m.labelGap} ` +
        `L ${rootToken.centerX} ${baseline - m.arcClearance}`,
      labelBox: {
        x: rootToken.centerX - labelWidth / 2,
        y: 0,
        width: labelWidth,
        height: m.labelHeight,
      },
    };
  }

  return { width, height, baseline, tokens: laidTokens, arcs, root };
}

/** All text boxes that must stay clear of each other across zones. */
export function tokenTextBoxes(layout: DiagramLayout): Box[] {
  const boxes: Box[] = [];
  for (const token of layout.tokens) {
    boxes.push(token.formBox);
    if (token.subBox) boxes.push(token.subBox);
  }
  return boxes;
}

export function labelBoxes(layout: DiagramLayout): Box[] {
  const boxes = layout.arcs.map((arc) => arc.labelBox);
  if (layout.root) boxes.push(layout.root.labelBox);
  return boxes;
}
