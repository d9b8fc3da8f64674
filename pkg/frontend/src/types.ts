// silt-surf/1 documents as served by the session service.

export interface CurveDoc {
  kind: "arc" | "closed";
  crossings: string[];
  sides: ("L" | "R")[];
  ends?: { vertex?: string; slot?: number; wrap?: string }[];
  anchor?: { index: number; value: number };
  band?: { lambda: string; n: number };
}

export interface DissectionDoc {
  kind: "dissection";
  arcs: CurveDoc[];
}

export type RimEntry = { corner: string } | { dual: string; side: number };

export interface SurfaceDoc {
  arcs: string[];
  fans: Record<string, [string, number][]>;
  dualFaces: Record<string, RimEntry[]>;
  boundary: [string, string][][];
  punctures: string[];
  genus: number;
  boundaryCount: number;
}

export interface CaseEntry {
  arc: number;
  left: string;
  right: string;
  leftNeighbors?: number[];
  rightNeighbors?: number[];
  leftTiltingPreserved?: boolean;
  rightTiltingPreserved?: boolean;
}

export interface PanelDoc {
  surface: SurfaceDoc;
  dissection: DissectionDoc;
  badges: [number, number][];
  flags: { silting: boolean; tilting: boolean };
  cases: CaseEntry[];
  origin: string;
}

export interface StateDoc {
  schema: string;
  kind: "state";
  panels: PanelDoc[];
  depth: number;
  exchange?: { case: string; middles: number; arc: number; direction: string };
  cut?: { case: number; arc: string; pieces: number };
}

export interface ErrorDoc {
  kind: "error";
  error: string;
}
