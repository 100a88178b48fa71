/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_localityview_localized: (a: number) => number;
export const __wbg_get_localityview_mass_inside_b: (a: number) => number;
export const __wbg_get_localityview_mass_outside_a: (a: number) => number;
export const __wbg_get_localityview_single: (a: number) => number;
export const __wbg_get_localityview_unlocalized: (a: number) => number;
export const __wbg_get_measurementview_coherence_rule2: (a: number) => number;
export const __wbg_get_measurementview_coherence_unitary: (a: number) => number;
export const __wbg_get_measurementview_entropy_rule2: (a: number) => number;
export const __wbg_get_measurementview_entropy_unitary: (a: number) => number;
export const __wbg_get_measurementview_p0: (a: number) => number;
export const __wbg_get_measurementview_p1: (a: number) => number;
export const __wbg_get_measurementview_witness_rule2: (a: number) => number;
export const __wbg_get_measurementview_witness_unitary: (a: number) => number;
export const __wbg_get_packetview_density_a: (a: number) => [number, number];
export const __wbg_get_packetview_density_b: (a: number) => [number, number];
export const __wbg_get_packetview_nu: (a: number) => number;
export const __wbg_get_packetview_pair_density: (a: number) => [number, number];
export const __wbg_get_packetview_single_a: (a: number) => number;
export const __wbg_get_packetview_single_b: (a: number) => number;
export const __wbg_get_packetview_two_particle: (a: number) => number;
export const __wbg_get_packetview_x: (a: number) => [number, number];
export const __wbg_localityview_free: (a: number, b: number) => void;
export const __wbg_measurementview_free: (a: number, b: number) => void;
export const __wbg_packetview_free: (a: number, b: number) => void;
export const __wbg_set_localityview_localized: (a: number, b: number) => void;
export const __wbg_set_localityview_mass_inside_b: (a: number, b: number) => void;
export const __wbg_set_localityview_mass_outside_a: (a: number, b: number) => void;
export const __wbg_set_localityview_single: (a: number, b: number) => void;
export const __wbg_set_localityview_unlocalized: (a: number, b: number) => void;
export const __wbg_set_measurementview_coherence_rule2: (a: number, b: number) => void;
export const __wbg_set_measurementview_coherence_unitary: (a: number, b: number) => void;
export const __wbg_set_measurementview_entropy_rule2: (a: number, b: number) => void;
export const __wbg_set_measurementview_entropy_unitary: (a: number, b: number) => void;
export const __wbg_set_measurementview_p0: (a: number, b: number) => void;
export const __wbg_set_measurementview_p1: (a: number, b: number) => void;
export const __wbg_set_measurementview_witness_rule2: (a: number, b: number) => void;
export const __wbg_set_measurementview_witness_unitary: (a: number, b: number) => void;
export const __wbg_set_packetview_density_a: (a: number, b: number, c: number) => void;
export const __wbg_set_packetview_density_b: (a: number, b: number, c: number) => void;
export const __wbg_set_packetview_nu: (a: number, b: number) => void;
export const __wbg_set_packetview_pair_density: (a: number, b: number, c: number) => void;
export const __wbg_set_packetview_single_a: (a: number, b: number) => void;
export const __wbg_set_packetview_single_b: (a: number, b: number) => void;
export const __wbg_set_packetview_two_particle: (a: number, b: number) => void;
export const __wbg_set_packetview_x: (a: number, b: number, c: number) => void;
export const discrepancy: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const locality: (a: number, b: number, c: number) => [number, number, number];
export const qubit_measurement: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
