/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_panel_entropy_in: (a: number) => number;
export const __wbg_get_panel_entropy_out: (a: number) => number;
export const __wbg_get_panel_epsilon_used: (a: number) => number;
export const __wbg_get_panel_lyapunov_residual: (a: number) => number;
export const __wbg_get_panel_total_variation: (a: number) => number;
export const __wbg_get_scenario_diff_width: (a: number) => number;
export const __wbg_get_scenario_materials: (a: number) => number;
export const __wbg_get_scenario_n: (a: number) => number;
export const __wbg_get_scenario_omega_i: (a: number) => number;
export const __wbg_get_scenario_sum_width: (a: number) => number;
export const __wbg_panel_free: (a: number, b: number) => void;
export const __wbg_scenario_free: (a: number, b: number) => void;
export const __wbg_set_panel_entropy_in: (a: number, b: number) => void;
export const __wbg_set_panel_entropy_out: (a: number, b: number) => void;
export const __wbg_set_panel_epsilon_used: (a: number, b: number) => void;
export const __wbg_set_panel_lyapunov_residual: (a: number, b: number) => void;
export const __wbg_set_panel_total_variation: (a: number, b: number) => void;
export const __wbg_set_scenario_diff_width: (a: number, b: number) => void;
export const __wbg_set_scenario_materials: (a: number, b: number) => void;
export const __wbg_set_scenario_n: (a: number, b: number) => void;
export const __wbg_set_scenario_omega_i: (a: number, b: number) => void;
export const __wbg_set_scenario_sum_width: (a: number, b: number) => void;
export const entropyCurve: (a: number, b: number, c: number) => [number, number, number, number];
export const inputJsi: (a: number) => [number, number, number, number];
export const panel_input: (a: number) => [number, number];
export const panel_n: (a: number) => number;
export const panel_output: (a: number) => [number, number];
export const propagate: (a: number) => [number, number, number];
export const scenario_axis: (a: number) => [number, number];
export const scenario_new: () => number;
export const __wbg_get_scenario_epsilon: (a: number) => number;
export const __wbg_get_scenario_g: (a: number) => number;
export const __wbg_get_scenario_omega_c: (a: number) => number;
export const __wbg_get_scenario_omega_s: (a: number) => number;
export const __wbg_get_scenario_sqrt_kappa: (a: number) => number;
export const __wbg_set_scenario_epsilon: (a: number, b: number) => void;
export const __wbg_set_scenario_g: (a: number, b: number) => void;
export const __wbg_set_scenario_omega_c: (a: number, b: number) => void;
export const __wbg_set_scenario_omega_s: (a: number, b: number) => void;
export const __wbg_set_scenario_sqrt_kappa: (a: number, b: number) => void;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
