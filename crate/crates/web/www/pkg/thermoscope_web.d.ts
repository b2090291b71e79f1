/* tslint:disable */
/* eslint-disable */

export class Analysis {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * RGBA bytes suitable for `ImageData`.
     */
    rgba(): Uint8Array;
    summary(): string;
    readonly height: number;
    readonly width: number;
}

export function accuracy_report(estimated: number, references: Float64Array): string;

/**
 * ROI is ignored when `roi_w` or `roi_h` is 0.
 */
export function analyze(bytes: Uint8Array, roi_x: number, roi_y: number, roi_w: number, roi_h: number, t_low: number, t_high: number, aggregator: string): Analysis;

export function planck_curve(kelvin: number, from_nm: number, to_nm: number, samples: number): string;

export function synth_scene(kind: string, width: number, height: number, seed: number, t_low: number, t_high: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_analysis_free: (a: number, b: number) => void;
    readonly accuracy_report: (a: number, b: number, c: number) => [number, number, number, number];
    readonly analysis_height: (a: number) => number;
    readonly analysis_rgba: (a: number) => [number, number];
    readonly analysis_summary: (a: number) => [number, number];
    readonly analysis_width: (a: number) => number;
    readonly analyze: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
    readonly planck_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly synth_scene: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
