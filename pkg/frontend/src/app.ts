// DOM wiring: hash routing between the search view (#/) and the document
// view (#/doc/<id>).  Rendering itself lives in render.ts.

import { Gateway, GatewayError, SearchController } from './api.js';
import {
  renderDocument,
  renderErrorBanner,
  renderNotFound,
  renderResults,
  renderSearchForm,
} from './render.js';
import { canSearch, emptySearchState, type Facets, type SearchState } from './types.js';

const gateway = new Gateway();
const controller = new SearchController(gateway);

let state: SearchState = { ...emptySearchState };
let facets: Facets = { materials: [], morphologies: [] };

function root(): HTMLElement {
  const el = document.getElementById('app');
  if (!el) throw new Error('missing #app element');
  return el;
}

function readForm(form: HTMLFormElement): SearchState {
  const data = new FormData(form);
  return {
    query: String(data.get('q') ?? ''),
    material: String(data.get('material') ?? ''),
    morphology: String(data.get('morphology') ?? ''),
  };
}

async function runSearch(): Promise<void> {
  const results = document.querySelector('[data-role="results-slot"]');
  if (!results) return;
  if (!canSearch(state)) {
    results.innerHTML = '<p class="hint">Enter a search term or pick a facet.</p>';
    return;
  }
  try {
    const response = await controller.search(state);
    results.innerHTML = renderResults(state, response);
  } catch (err) {
    if (err instanceof DOMException && err.name === 'AbortError') return;
    const message = err instanceof GatewayError ? err.message : 'Gateway unreachable';
    results.innerHTML = renderErrorBanner(message);
    results.querySelector('[data-action="retry"]')?.addEventListener('click', () => {
      void runSearch();
    });
  }
}

function showSearchView(): void {
  root().innerHTML = `${renderSearchForm(state, facets)}<div data-role="results-slot"></div>`;
  const form = root().querySelector<HTMLFormElement>('[data-role="search-form"]');
  form?.addEventListener('submit', (event) => {
    event.preventDefault();
    state = readForm(form);
    void runSearch();
  });
  form?.querySelectorAll('select').forEach((select) =>
    select.addEventListener('change', () => {
      state = readForm(form);
      void runSearch();
    }),
  );
  if (canSearch(state)) void runSearch();
}

async function showDocumentView(docId: string): Promise<void> {
  try {
    const doc = await gateway.document(docId);
    root().innerHTML = renderDocument(doc);
  } catch (err) {
    if (err instanceof GatewayError && err.status === 404) {
      root().innerHTML = renderNotFound(docId);
    } else {
      const message = err instanceof GatewayError ? err.message : 'Gateway unreachable';
      root().innerHTML = renderErrorBanner(message);
      root().querySelector('[data-action="retry"]')?.addEventListener('click', () => {
        void showDocumentView(docId);
      });
    }
  }
}

function route(): void {
  const hash = window.location.hash || '#/';
  const docMatch = /^#\/doc\/(.+)$/.exec(hash);
  if (docMatch) {
    void showDocumentView(decodeURIComponent(docMatch[1]));
  } else {
    showSearchView();
  }
}

export async function start(): Promise<void> {
  try {
    facets = await gateway.facets();
  } catch {
    facets = { materials: [], morphologies: [] };
  }
  window.addEventListener('hashchange', route);
  route();
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  void start();
}
