// Pure HTML-string renderers: every value shown traces to a gateway
// response field, which keeps these snapshot-testable without a DOM.

import type { DocRecord, Facets, Quantity, SearchResponse, SearchState } from './types.js';

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

function option(value: string, selected: string): string {
  const sel = value === selected ? ' selected' : '';
  return `<option value="${escapeHtml(value)}"${sel}>${escapeHtml(value)}</option>`;
}

export function renderSearchForm(state: SearchState, facets: Facets): string {
  const materials = ['', ...facets.materials].map((m) => option(m, state.material)).join('');
  const morphologies = ['', ...facets.morphologies].map((m) => option(m, state.morphology)).join('');
  return [
    '<form class="search-form" data-role="search-form">',
    `<input type="search" name="q" placeholder="Search papers" value="${escapeHtml(state.query)}">`,
    `<select name="material" aria-label="Material">${materials}</select>`,
    `<select name="morphology" aria-label="Morphology">${morphologies}</select>`,
    '<button type="submit">Search</button>',
    '</form>',
  ].join('');
}

function thumbnails(figures: { caption: string }[]): string {
  if (!figures.length) return '';
  const cells = figures
    .slice(0, 3)
    .map((f) => `<figure class="thumb" title="${escapeHtml(f.caption)}">fig</figure>`)
    .join('');
  return `<div class="thumbs">${cells}</div>`;
}

export function renderResults(state: SearchState, response: SearchResponse): string {
  if (!response.hits.length) {
    return '<section class="results" data-role="results"><p class="empty">No results.</p></section>';
  }
  const items = response.hits
    .map((hit) => {
      return [
        `<li class="hit" data-doc="${escapeHtml(hit.doc_id)}">`,
        `<a href="#/doc/${encodeURIComponent(hit.doc_id)}">${escapeHtml(hit.title || hit.doc_id)}</a>`,
        `<span class="score">${hit.score.toFixed(4)}</span>`,
        thumbnails(hit.figures ?? []),
        `<p class="snippet">${escapeHtml(hit.snippet)}</p>`,
        '</li>',
      ].join('');
    })
    .join('');
  return [
    '<section class="results" data-role="results">',
    `<p class="total">${response.total} result${response.total === 1 ? '' : 's'}</p>`,
    `<ul>${items}</ul>`,
    '</section>',
  ].join('');
}

export function renderErrorBanner(message: string): string {
  return [
    '<div class="banner error" role="alert" data-role="error-banner">',
    `<span>${escapeHtml(message)}</span>`,
    '<button type="button" data-action="retry">Retry</button>',
    '</div>',
  ].join('');
}

function formatQuantity(q: Quantity): string {
  return `${q.value} ${q.unit}`;
}

export function renderRecipeTable(doc: DocRecord): string {
  const steps = doc.recipe?.steps ?? [];
  if (!steps.length) {
    return '<section class="recipe" data-role="recipe"><p class="empty">No recipe steps extracted.</p></section>';
  }
  const rows = steps
    .map((step) => {
      const materials = step.materials.map(escapeHtml).join(', ');
      const quantities = step.quantities.map(formatQuantity).map(escapeHtml).join('; ');
      return [
        '<tr>',
        `<td>${step.index}</td>`,
        `<td>${escapeHtml(step.action)}</td>`,
        `<td>${materials}</td>`,
        `<td>${quantities}</td>`,
        '</tr>',
      ].join('');
    })
    .join('');
  return [
    '<section class="recipe" data-role="recipe">',
    '<h2>Recipe steps</h2>',
    '<table><thead><tr><th>#</th><th>Action</th><th>Materials</th><th>Quantities</th></tr></thead>',
    `<tbody>${rows}</tbody></table>`,
    '</section>',
  ].join('');
}

const SECTION_ORDER = ['abstract', 'experimental', 'references'];

export function renderDocument(doc: DocRecord): string {
  const doi = doc.doi
    ? `<p class="doi">DOI: <a href="https://doi.org/${encodeURIComponent(doc.doi)}">${escapeHtml(doc.doi)}</a></p>`
    : '<p class="doi">DOI: not recorded</p>';
  const sections = SECTION_ORDER.filter((label) => doc.sections[label])
    .map(
      (label) =>
        `<section class="doc-section"><h2>${escapeHtml(label)}</h2><p>${escapeHtml(doc.sections[label])}</p></section>`,
    )
    .join('');
  return [
    '<article class="doc" data-role="doc-view">',
    `<h1>${escapeHtml(doc.title || doc.doc_id)}</h1>`,
    doi,
    thumbnails(doc.figures ?? []),
    sections,
    renderRecipeTable(doc),
    '<p><a href="#/">Back to search</a></p>',
    '</article>',
  ].join('');
}

export function renderNotFound(docId: string): string {
  return `<article class="doc missing" data-role="not-found"><h1>Document not found</h1><p>No document ${escapeHtml(docId)}.</p><p><a href="#/">Back to search</a></p></article>`;
}
