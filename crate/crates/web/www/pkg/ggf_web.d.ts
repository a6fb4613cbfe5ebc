/* tslint:disable */
/* eslint-disable */

export function adjointMask(len: number, a: number, b: number): Uint8Array;

export function boundsGrid(len: number, gen: string): Float64Array;

export function cohenMap(len: number, gen: string, signal: string): Float64Array;

export function divisors(len: number): Uint32Array;

export function frameSummary(len: number, gen: string, a: number, b: number): Float64Array;

export function spreadingMagnitude(len: number, gen: string): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly adjointMask: (a: number, b: number, c: number) => [number, number, number, number];
    readonly boundsGrid: (a: number, b: number, c: number) => [number, number, number, number];
    readonly cohenMap: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly divisors: (a: number) => [number, number];
    readonly frameSummary: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly spreadingMagnitude: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
