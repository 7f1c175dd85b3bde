/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_routing_free: (a: number, b: number) => void;
export const __wbg_rowscan_free: (a: number, b: number) => void;
export const __wbg_slide_free: (a: number, b: number) => void;
export const generateSlide: (a: number, b: number, c: number, d: number) => [number, number, number];
export const routeMask: (a: number, b: number) => [number, number, number];
export const routing_buses: (a: number) => [number, number];
export const routing_grid: (a: number) => [number, number];
export const routing_kept: (a: number) => number;
export const routing_width: (a: number) => number;
export const rowscan_bitmap: (a: number) => [number, number];
export const rowscan_starts: (a: number) => [number, number];
export const rowscan_transitions: (a: number) => [number, number];
export const scanRow: (a: number, b: number) => number;
export const slide_compressedBytes: (a: number) => number;
export const slide_containerRatio: (a: number) => number;
export const slide_fgCount: (a: number) => number;
export const slide_fgRatio: (a: number) => number;
export const slide_height: (a: number) => number;
export const slide_lossless: (a: number) => number;
export const slide_modelRatio: (a: number) => number;
export const slide_pixels: (a: number) => [number, number];
export const slide_report: (a: number) => [number, number];
export const slide_width: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
