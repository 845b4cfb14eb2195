export interface ConceptNode {
  id: string;
  name: string;
  category: string;
}

export interface GraphEdge {
  from: string;
  to: string;
  weight: number;
}

export interface GraphDoc {
  nodes: ConceptNode[];
  edges: GraphEdge[];
}

export interface CptRow {
  combo: number[];
  p: [number, number];
  n: [number, number];
  total: number;
  fallback: boolean;
}

export interface CptDoc {
  node: string;
  parents: string[];
  rows: CptRow[];
}

export interface QueryResponse {
  target: string;
  p: { "0": number; "1": number };
  support: { total: number };
}

export interface SessionDoc {
  session_id: string;
  graph: GraphDoc;
  edits: unknown[];
}

export interface EdgeEditResponse {
  graph: GraphDoc;
  changed: CptDoc[];
  edits: number;
}

export interface ArgumentReport {
  evidence: Record<string, number>;
  p_with: number;
  p_baseline: number;
  delta: number;
  supporting_total: number;
  sufficient: boolean;
  narrative: string;
}

export interface ArgumentsResponse {
  target: string;
  reports: ArgumentReport[];
}

export type EdgeAction = "accept" | "reject" | "flip";
