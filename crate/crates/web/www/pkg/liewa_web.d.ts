/* tslint:disable */
/* eslint-disable */

/**
 * Analyzes either a builder expression (`v_sl2 3`) or a structure-constant
 * JSON document, and returns the analysis report as JSON.
 */
export function analyze_json(input: string): string;

/**
 * Orbit of `(x, y)` in `Z^2` under the ball of radius `radius`, flattened
 * as `[x0, y0, x1, y1, ...]`. Points with a coordinate outside `±bound`
 * are dropped.
 */
export function orbit_points(x: number, y: number, radius: number, bound: number): Int32Array;

/**
 * `Z'(A)` for `A = [[a, b], [c, d]]` as a JSON array of rows of strings.
 */
export function rep_matrix_json(m: number, a: number, b: number, c: number, d: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_json: (a: number, b: number) => [number, number];
    readonly orbit_points: (a: number, b: number, c: number, d: number) => [number, number];
    readonly rep_matrix_json: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
