/* tslint:disable */
/* eslint-disable */

/**
 * Input and output intensities on the same grid, row = signal, column = idler.
 */
export class Panel {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    entropy_in: number;
    entropy_out: number;
    epsilon_used: number;
    lyapunov_residual: number;
    total_variation: number;
    /**
     * Row-major, normalized so that the maximum is 1.
     */
    readonly input: Float64Array;
    readonly n: number;
    readonly output: Float64Array;
}

export class Scenario {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Frequencies of the (shared) signal and idler axis in meV.
     */
    axis(): Float64Array;
    constructor();
    diff_width: number;
    epsilon: number;
    g: number;
    materials: number;
    n: number;
    omega_c: number;
    omega_i: number;
    omega_s: number;
    sqrt_kappa: number;
    sum_width: number;
}

export function entropyCurve(s: Scenario, kappas: Float64Array): Float64Array;

export function inputJsi(s: Scenario): Float64Array;

export function propagate(s: Scenario): Panel;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_panel_entropy_in: (a: number) => number;
    readonly __wbg_get_panel_entropy_out: (a: number) => number;
    readonly __wbg_get_panel_epsilon_used: (a: number) => number;
    readonly __wbg_get_panel_lyapunov_residual: (a: number) => number;
    readonly __wbg_get_panel_total_variation: (a: number) => number;
    readonly __wbg_get_scenario_diff_width: (a: number) => number;
    readonly __wbg_get_scenario_materials: (a: number) => number;
    readonly __wbg_get_scenario_n: (a: number) => number;
    readonly __wbg_get_scenario_omega_i: (a: number) => number;
    readonly __wbg_get_scenario_sum_width: (a: number) => number;
    readonly __wbg_panel_free: (a: number, b: number) => void;
    readonly __wbg_scenario_free: (a: number, b: number) => void;
    readonly __wbg_set_panel_entropy_in: (a: number, b: number) => void;
    readonly __wbg_set_panel_entropy_out: (a: number, b: number) => void;
    readonly __wbg_set_panel_epsilon_used: (a: number, b: number) => void;
    readonly __wbg_set_panel_lyapunov_residual: (a: number, b: number) => void;
    readonly __wbg_set_panel_total_variation: (a: number, b: number) => void;
    readonly __wbg_set_scenario_diff_width: (a: number, b: number) => void;
    readonly __wbg_set_scenario_materials: (a: number, b: number) => void;
    readonly __wbg_set_scenario_n: (a: number, b: number) => void;
    readonly __wbg_set_scenario_omega_i: (a: number, b: number) => void;
    readonly __wbg_set_scenario_sum_width: (a: number, b: number) => void;
    readonly entropyCurve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly inputJsi: (a: number) => [number, number, number, number];
    readonly panel_input: (a: number) => [number, number];
    readonly panel_n: (a: number) => number;
    readonly panel_output: (a: number) => [number, number];
    readonly propagate: (a: number) => [number, number, number];
    readonly scenario_axis: (a: number) => [number, number];
    readonly scenario_new: () => number;
    readonly __wbg_get_scenario_epsilon: (a: number) => number;
    readonly __wbg_get_scenario_g: (a: number) => number;
    readonly __wbg_get_scenario_omega_c: (a: number) => number;
    readonly __wbg_get_scenario_omega_s: (a: number) => number;
    readonly __wbg_get_scenario_sqrt_kappa: (a: number) => number;
    readonly __wbg_set_scenario_epsilon: (a: number, b: number) => void;
    readonly __wbg_set_scenario_g: (a: number, b: number) => void;
    readonly __wbg_set_scenario_omega_c: (a: number, b: number) => void;
    readonly __wbg_set_scenario_omega_s: (a: number, b: number) => void;
    readonly __wbg_set_scenario_sqrt_kappa: (a: number, b: number) => void;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
