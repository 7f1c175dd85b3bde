/* tslint:disable */
/* eslint-disable */

export class Routing {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Down-bus after each stage, concatenated; `width` values per stage.
     */
    readonly buses: Uint32Array;
    /**
     * One string per stage: `.` pass, `R` take right, `L` give left.
     */
    readonly grid: string[];
    readonly kept: number;
    readonly width: number;
}

export class RowScan {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bitmap: string;
    /**
     * Columns where a run of 0s or 1s begins.
     */
    readonly starts: Uint32Array;
    readonly transitions: string;
}

export class Slide {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly compressedBytes: number;
    readonly containerRatio: number;
    readonly fgCount: number;
    /**
     * 0 when the slide has no foreground.
     */
    readonly fgRatio: number;
    readonly height: number;
    /**
     * Whether decompressing the container gave back the same pixels.
     */
    readonly lossless: boolean;
    readonly modelRatio: number;
    /**
     * Row-major grey levels.
     */
    readonly pixels: Uint8Array;
    readonly report: string;
    readonly width: number;
}

/**
 * Generates a 256x256 slide of disk spots, or the small 18x18 sample when
 * `diameter` is 0, then compresses and decompresses it.
 */
export function generateSlide(seed: number, occupancy: number, diameter: number, noise: number): Slide;

/**
 * Routes column numbers `0..n` through the network for a `0`/`1` mask.
 */
export function routeMask(mask: string): Routing;

export function scanRow(pixels: Uint8Array): RowScan;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_routing_free: (a: number, b: number) => void;
    readonly __wbg_rowscan_free: (a: number, b: number) => void;
    readonly __wbg_slide_free: (a: number, b: number) => void;
    readonly generateSlide: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly routeMask: (a: number, b: number) => [number, number, number];
    readonly routing_buses: (a: number) => [number, number];
    readonly routing_grid: (a: number) => [number, number];
    readonly routing_kept: (a: number) => number;
    readonly routing_width: (a: number) => number;
    readonly rowscan_bitmap: (a: number) => [number, number];
    readonly rowscan_starts: (a: number) => [number, number];
    readonly rowscan_transitions: (a: number) => [number, number];
    readonly scanRow: (a: number, b: number) => number;
    readonly slide_compressedBytes: (a: number) => number;
    readonly slide_containerRatio: (a: number) => number;
    readonly slide_fgCount: (a: number) => number;
    readonly slide_fgRatio: (a: number) => number;
    readonly slide_height: (a: number) => number;
    readonly slide_lossless: (a: number) => number;
    readonly slide_modelRatio: (a: number) => number;
    readonly slide_pixels: (a: number) => [number, number];
    readonly slide_report: (a: number) => [number, number];
    readonly slide_width: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
