/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_analysis_free: (a: number, b: number) => void;
export const accuracy_report: (a: number, b: number, c: number) => [number, number, number, number];
export const analysis_height: (a: number) => number;
export const analysis_rgba: (a: number) => [number, number];
export const analysis_summary: (a: number) => [number, number];
export const analysis_width: (a: number) => number;
export const analyze: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
export const planck_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const synth_scene: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
