// Mock gateway payloads shaped exactly like the HTTP API's JSON.

import type { DocRecord, Facets, SearchResponse } from '../src/types.js';

export const facets: Facets = {
  materials: ['silver', 'zinc oxide'],
  morphologies: ['nanowire', 'film'],
};

export const searchResponse: SearchResponse = {
  total: 2,
  hits: [
    {
      doc_id: 'fx-single',
      score: 0.8312,
      snippet: '0.1 g of AgNO3 was dissolved in 50 mL of deionized water.',
      title: 'Rapid Synthesis of Silver Nanowires from Aqueous Precursors',
      figures: [{ page: 1, caption: 'Figure 1. SEM image of silver nanowires.' }],
    },
    {
      doc_id: 'fx-multi',
      score: 0.4105,
      snippet: 'Zinc oxide rods were grown at 95 °C from zinc acetate.',
      title: 'A Low-Temperature Route to Zinc Oxide Rods',
      figures: [],
    },
  ],
};

export const emptyResponse: SearchResponse = { total: 0, hits: [] };

export const docRecord: DocRecord = {
  doc_id: 'fx-single',
  title: 'Rapid Synthesis of Silver Nanowires from Aqueous Precursors',
  doi: '10.1021/jn.2018.034',
  sections: {
    abstract:
      'We report a reproducible aqueous route to silver nanowires and quantify how stirring rate shapes morphology.',
    experimental:
      '0.1 g of AgNO3 was dissolved in 50 mL of deionized water. The solution was stirred at 300 rpm for 30 min.',
    references: '[1] A. Ruiz, Seed-mediated growth of silver wires, J. Nano 12, 34 (2018).',
  },
  recipe: {
    doc_id: 'fx-single',
    grouping: 'sequential',
    steps: [
      {
        index: 0,
        action: 'dissolve',
        materials: ['AgNO3', 'deionized water'],
        quantities: [
          { value: 0.1, unit: 'g', kind: 'mass' },
          { value: 50, unit: 'mL', kind: 'volume' },
        ],
        sentence_ref: { doc: 'fx-single', section: 'experimental', sentence: 0 },
        raw_text: '0.1 g of AgNO3 was dissolved in 50 mL of deionized water.',
        secondary_actions: [],
      },
      {
        index: 1,
        action: 'stir',
        materials: [],
        quantities: [
          { value: 300, unit: 'rpm', kind: 'rate' },
          { value: 30, unit: 'min', kind: 'time' },
        ],
        sentence_ref: { doc: 'fx-single', section: 'experimental', sentence: 1 },
        raw_text: 'The solution was stirred at 300 rpm for 30 min.',
        secondary_actions: [],
      },
      {
        index: 2,
        action: 'inject',
        materials: ['NaBH4'],
        quantities: [{ value: 5, unit: 'mL', kind: 'volume' }],
        sentence_ref: { doc: 'fx-single', section: 'experimental', sentence: 3 },
        raw_text: 'A 5 mL aliquot of NaBH4 was injected into the flask.',
        secondary_actions: [],
      },
    ],
  },
  materials: ['silver'],
  morphologies: ['nanowire'],
  figures: [{ page: 1, caption: 'Figure 1. SEM image of silver nanowires.' }],
};

export const docWithoutRecipe: DocRecord = {
  ...docRecord,
  doc_id: 'fx-none',
  title: 'A Paper Without Extracted Steps',
  doi: null,
  recipe: { doc_id: 'fx-none', grouping: 'sequential', steps: [] },
  figures: [],
};

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}
