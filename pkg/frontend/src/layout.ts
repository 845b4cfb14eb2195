export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  columnWidth: number;
  rowHeight: number;
  marginX: number;
  marginY: number;
}

export interface GraphLayout {
  positions: Map<string, Point>;
  layers: string[][];
  width: number;
  height: number;
}

const DEFAULTS: LayoutOptions = {
  columnWidth: 170,
  rowHeight: 64,
  marginX: 70,
  marginY: 40,
};

/**
 * Deterministic layered layout: each node sits one column right of its
 * deepest parent, and rows within a column follow the input node order, so
 * the same graph always renders identically.
 */
export function layeredLayout(
  nodeIds: string[],
  edges: Array<[string, string]>,
  options: Partial<LayoutOptions> = {},
): GraphLayout {
  const opts = { ...DEFAULTS, ...options };
  const parents = new Map<string, string[]>(nodeIds.map((n) => [n, []]));
  for (const [from, to] of edges) {
    parents.get(to)?.push(from);
  }

  const layerOf = new Map<string, number>();
  const visiting = new Set<string>();
  const layer = (node: string): number => {
    const known = layerOf.get(node);
    if (known !== undefined) return known;
    if (visiting.has(node)) return 0; // defensive: cycles flatten to layer 0
    visiting.add(node);
    const ps = parents.get(node) ?? [];
    const value = ps.length === 0 ? 0 : Math.max(...ps.map(layer)) + 1;
    visiting.delete(node);
    layerOf.set(node, value);
    return value;
  };
  nodeIds.forEach(layer);

  const depth = nodeIds.length ? Math.max(...layerOf.values()) + 1 : 0;
  const layers: string[][] = Array.from({ length: depth }, () => []);
  for (const node of nodeIds) {
    layers[layerOf.get(node) ?? 0]?.push(node);
  }

  const positions = new Map<string, Point>();
  layers.forEach((column, col) => {
    column.forEach((node, row) => {
      positions.set(node, {
        x: opts.marginX + col * opts.columnWidth,
        y: opts.marginY + row * opts.rowHeight,
      });
    });
  });
  const tallest = Math.max(1, ...layers.map((c) => c.length));
  return {
    positions,
    layers,
    width: opts.marginX * 2 + Math.max(0, depth - 1) * opts.columnWidth,
    height: opts.marginY * 2 + (tallest - 1) * opts.rowHeight,
  };
}
