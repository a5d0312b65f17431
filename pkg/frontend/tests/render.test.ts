import { describe, expect, test } from 'vitest';

import {
  escapeHtml,
  renderDocument,
  renderErrorBanner,
  renderNotFound,
  renderRecipeTable,
  renderResults,
  renderSearchForm,
} from '../src/render.js';
import { emptySearchState } from '../src/types.js';
import { docRecord, docWithoutRecipe, emptyResponse, facets, searchResponse } from './fixtures.js';

describe('search view', () => {
  test('results list snapshot', () => {
    const html = renderResults({ ...emptySearchState, query: 'silver' }, searchResponse);
    expect(html).toMatchSnapshot();
  });

  test('every rendered hit value comes from the payload', () => {
    const html = renderResults({ ...emptySearchState, query: 'silver' }, searchResponse);
    for (const hit of searchResponse.hits) {
      expect(html).toContain(escapeHtml(hit.title));
      expect(html).toContain(escapeHtml(hit.snippet));
      expect(html).toContain(`#/doc/${hit.doc_id}`);
    }
    expect(html).toContain('2 results');
  });

  test('facet selectors are populated from /api/facets payload', () => {
    const html = renderSearchForm({ query: '', material: 'silver', morphology: '' }, facets);
    expect(html).toMatchSnapshot();
    for (const material of facets.materials) expect(html).toContain(`>${material}</option>`);
    for (const morphology of facets.morphologies) expect(html).toContain(`>${morphology}</option>`);
    expect(html).toContain('value="silver" selected');
  });

  test('empty result set shows the explicit empty state', () => {
    const html = renderResults({ ...emptySearchState, query: 'nothing' }, emptyResponse);
    expect(html).toContain('No results.');
    expect(html).toMatchSnapshot();
  });

  test('error banner offers retry and carries the message', () => {
    const html = renderErrorBanner('Gateway unreachable');
    expect(html).toContain('Gateway unreachable');
    expect(html).toContain('data-action="retry"');
    expect(html).toMatchSnapshot();
  });

  test('markup in payloads is escaped, not executed', () => {
    const hostile = {
      total: 1,
      hits: [
        {
          doc_id: 'x',
          score: 1,
          snippet: '<script>alert(1)</script>',
          title: '<b>bold</b>',
          figures: [],
        },
      ],
    };
    const html = renderResults({ ...emptySearchState, query: 'x' }, hostile);
    expect(html).not.toContain('<script>');
    expect(html).toContain('&lt;script&gt;');
  });
});

describe('document view', () => {
  test('document snapshot shows abstract, experimental, references, doi, recipe', () => {
    const html = renderDocument(docRecord);
    expect(html).toMatchSnapshot();
  });

  test('sections render in the fixed order', () => {
    const html = renderDocument(docRecord);
    const abstractAt = html.indexOf('abstract');
    const experimentalAt = html.indexOf('experimental');
    const referencesAt = html.indexOf('references');
    expect(abstractAt).toBeGreaterThan(-1);
    expect(experimentalAt).toBeGreaterThan(abstractAt);
    expect(referencesAt).toBeGreaterThan(experimentalAt);
  });

  test('recipe table rows follow step order with index, action, materials, quantities', () => {
    const html = renderRecipeTable(docRecord);
    const rows = [...html.matchAll(/<tr>(.*?)<\/tr>/g)].map((m) => m[1]);
    expect(rows.length).toBe(4); // header + 3 steps
    expect(rows[1]).toContain('<td>0</td>');
    expect(rows[1]).toContain('dissolve');
    expect(rows[1]).toContain('AgNO3, deionized water');
    expect(rows[1]).toContain('0.1 g; 50 mL');
    expect(rows[2]).toContain('<td>1</td>');
    expect(rows[3]).toContain('inject');
  });

  test('empty recipe shows its empty state', () => {
    const html = renderDocument(docWithoutRecipe);
    expect(html).toContain('No recipe steps extracted.');
    expect(html).toContain('DOI: not recorded');
    expect(html).toMatchSnapshot();
  });

  test('not-found view', () => {
    expect(renderNotFound('ghost')).toContain('No document ghost');
  });
});
