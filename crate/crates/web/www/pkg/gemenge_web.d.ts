/* tslint:disable */
/* eslint-disable */

export class LocalityView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Symmetrized position restricted to the domain, in the pair state.
     */
    localized: number;
    mass_inside_b: number;
    mass_outside_a: number;
    /**
     * `⟨x⟩` of the unit-width packet at the origin, alone.
     */
    single: number;
    /**
     * Unrestricted symmetrized position in the pair state.
     */
    unlocalized: number;
}

export class MeasurementView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    coherence_rule2: number;
    coherence_unitary: number;
    entropy_rule2: number;
    entropy_unitary: number;
    p0: number;
    p1: number;
    witness_rule2: number;
    witness_unitary: number;
}

export class PacketView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Probability densities of the two single-particle packets.
     */
    density_a: Float64Array;
    density_b: Float64Array;
    nu: number;
    /**
     * One-particle density of the symmetrized pair, `∫|Ψ(x, y)|² dy`.
     */
    pair_density: Float64Array;
    single_a: number;
    single_b: number;
    /**
     * Symmetrized position observable in the symmetrized state.
     */
    two_particle: number;
    x: Float64Array;
}

/**
 * Symmetrized packets at `(center_a, width_a)` and `(center_b, width_b)`.
 */
export function discrepancy(center_a: number, width_a: number, center_b: number, width_b: number, fermion: boolean): PacketView;

/**
 * Packet at the origin plus a second one at `center_b`, observed through the
 * position operator restricted to `[−half_width, half_width]`.
 */
export function locality(center_b: number, half_width: number, fermion: boolean): LocalityView;

/**
 * Premeasurement of `σz` on `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` followed by
 * objectification.
 */
export function qubit_measurement(theta: number, phase: number): MeasurementView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_localityview_localized: (a: number) => number;
    readonly __wbg_get_localityview_mass_inside_b: (a: number) => number;
    readonly __wbg_get_localityview_mass_outside_a: (a: number) => number;
    readonly __wbg_get_localityview_single: (a: number) => number;
    readonly __wbg_get_localityview_unlocalized: (a: number) => number;
    readonly __wbg_get_measurementview_coherence_rule2: (a: number) => number;
    readonly __wbg_get_measurementview_coherence_unitary: (a: number) => number;
    readonly __wbg_get_measurementview_entropy_rule2: (a: number) => number;
    readonly __wbg_get_measurementview_entropy_unitary: (a: number) => number;
    readonly __wbg_get_measurementview_p0: (a: number) => number;
    readonly __wbg_get_measurementview_p1: (a: number) => number;
    readonly __wbg_get_measurementview_witness_rule2: (a: number) => number;
    readonly __wbg_get_measurementview_witness_unitary: (a: number) => number;
    readonly __wbg_get_packetview_density_a: (a: number) => [number, number];
    readonly __wbg_get_packetview_density_b: (a: number) => [number, number];
    readonly __wbg_get_packetview_nu: (a: number) => number;
    readonly __wbg_get_packetview_pair_density: (a: number) => [number, number];
    readonly __wbg_get_packetview_single_a: (a: number) => number;
    readonly __wbg_get_packetview_single_b: (a: number) => number;
    readonly __wbg_get_packetview_two_particle: (a: number) => number;
    readonly __wbg_get_packetview_x: (a: number) => [number, number];
    readonly __wbg_localityview_free: (a: number, b: number) => void;
    readonly __wbg_measurementview_free: (a: number, b: number) => void;
    readonly __wbg_packetview_free: (a: number, b: number) => void;
    readonly __wbg_set_localityview_localized: (a: number, b: number) => void;
    readonly __wbg_set_localityview_mass_inside_b: (a: number, b: number) => void;
    readonly __wbg_set_localityview_mass_outside_a: (a: number, b: number) => void;
    readonly __wbg_set_localityview_single: (a: number, b: number) => void;
    readonly __wbg_set_localityview_unlocalized: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_coherence_rule2: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_coherence_unitary: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_entropy_rule2: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_entropy_unitary: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_p0: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_p1: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_witness_rule2: (a: number, b: number) => void;
    readonly __wbg_set_measurementview_witness_unitary: (a: number, b: number) => void;
    readonly __wbg_set_packetview_density_a: (a: number, b: number, c: number) => void;
    readonly __wbg_set_packetview_density_b: (a: number, b: number, c: number) => void;
    readonly __wbg_set_packetview_nu: (a: number, b: number) => void;
    readonly __wbg_set_packetview_pair_density: (a: number, b: number, c: number) => void;
    readonly __wbg_set_packetview_single_a: (a: number, b: number) => void;
    readonly __wbg_set_packetview_single_b: (a: number, b: number) => void;
    readonly __wbg_set_packetview_two_particle: (a: number, b: number) => void;
    readonly __wbg_set_packetview_x: (a: number, b: number, c: number) => void;
    readonly discrepancy: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly locality: (a: number, b: number, c: number) => [number, number, number];
    readonly qubit_measurement: (a: number, b: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
