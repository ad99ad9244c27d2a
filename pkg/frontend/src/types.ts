// Wire formats of the three service endpoints. The client renders these
// verbatim and never recomputes weights, projections, or colors.

export interface UploadResponse {
  id: string;
  n: number;
  d: number;
  m: number;
  n_pareto: number;
  fit_rms: number;
}

export interface RadarCell {
  i: number;
  j: number;
  members: number[];
  mean_f: number[];
  radar: number[];
}

export interface RadarGrid {
  grid: number;
  cells: RadarCell[];
  constant_metrics?: number[];
}

export interface AxisSpec {
  name: string;
  lo: number;
  hi: number;
  kind: "param" | "metric";
}

export interface PcpPolyline {
  record: number;
  vertices: number[];
  color: [number, number, number];
  phi: number;
}

export interface PcpModel {
  axes: AxisSpec[];
  polylines: PcpPolyline[];
  weights: number[];
}

export interface PreferenceResponse {
  weights: number[];
  f_u: number[];
  distance: number;
  pcp: PcpModel;
}

export interface ErrorBody {
  error: string;
  detail?: string;
}

export type CellSelection = { cell: [number, number] };
export type PointSelection = { f_r: number[] };
export type Selection = CellSelection | PointSelection;
