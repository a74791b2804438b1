/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const construct_mws: (a: number, b: number, c: number) => [number, number];
export const construct_weights: (a: number, b: number, c: number) => [number, number];
export const reachable: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
