// Shapes mirror the gateway's JSON responses verbatim; the client renders
// them without re-deriving anything.

export interface SearchHit {
  doc_id: string;
  score: number;
  snippet: string;
  title: string;
  figures: FigureRef[];
}

export interface SearchResponse {
  hits: SearchHit[];
  total: number;
}

export interface FigureRef {
  page: number;
  caption: string;
}

export interface Facets {
  materials: string[];
  morphologies: string[];
}

export interface Quantity {
  value: number;
  unit: string;
  kind: string;
  range_pair?: boolean;
}

export interface RecipeStep {
  index: number;
  action: string;
  materials: string[];
  quantities: Quantity[];
  sentence_ref: { doc: string; section: string; sentence: number };
  raw_text: string;
  secondary_actions?: string[];
}

export interface Recipe {
  doc_id: string;
  steps: RecipeStep[];
  grouping: string;
}

export interface DocRecord {
  doc_id: string;
  title: string;
  doi: string | null;
  sections: Record<string, string>;
  recipe: Recipe | null;
  materials: string[];
  morphologies: string[];
  figures: FigureRef[];
}

export interface SearchState {
  query: string;
  material: string;
  morphology: string;
}

export const emptySearchState: SearchState = { query: '', material: '', morphology: '' };

export function canSearch(state: SearchState): boolean {
  return Boolean(state.query.trim() || state.material || state.morphology);
}
