/* @ts-self-types="./gemenge_web.d.ts" */

export class LocalityView {
    static __wrap(ptr) {
        const obj = Object.create(LocalityView.prototype);
        obj.__wbg_ptr = ptr;
        LocalityViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        LocalityViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_localityview_free(ptr, 0);
    }
    /**
     * Symmetrized position restricted to the domain, in the pair state.
     * @returns {number}
     */
    get localized() {
        const ret = wasm.__wbg_get_localityview_localized(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mass_inside_b() {
        const ret = wasm.__wbg_get_localityview_mass_inside_b(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mass_outside_a() {
        const ret = wasm.__wbg_get_localityview_mass_outside_a(this.__wbg_ptr);
        return ret;
    }
    /**
     * `⟨x⟩` of the unit-width packet at the origin, alone.
     * @returns {number}
     */
    get single() {
        const ret = wasm.__wbg_get_localityview_single(this.__wbg_ptr);
        return ret;
    }
    /**
     * Unrestricted symmetrized position in the pair state.
     * @returns {number}
     */
    get unlocalized() {
        const ret = wasm.__wbg_get_localityview_unlocalized(this.__wbg_ptr);
        return ret;
    }
    /**
     * Symmetrized position restricted to the domain, in the pair state.
     * @param {number} arg0
     */
    set localized(arg0) {
        wasm.__wbg_set_localityview_localized(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mass_inside_b(arg0) {
        wasm.__wbg_set_localityview_mass_inside_b(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mass_outside_a(arg0) {
        wasm.__wbg_set_localityview_mass_outside_a(this.__wbg_ptr, arg0);
    }
    /**
     * `⟨x⟩` of the unit-width packet at the origin, alone.
     * @param {number} arg0
     */
    set single(arg0) {
        wasm.__wbg_set_localityview_single(this.__wbg_ptr, arg0);
    }
    /**
     * Unrestricted symmetrized position in the pair state.
     * @param {number} arg0
     */
    set unlocalized(arg0) {
        wasm.__wbg_set_localityview_unlocalized(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) LocalityView.prototype[Symbol.dispose] = LocalityView.prototype.free;

export class MeasurementView {
    static __wrap(ptr) {
        const obj = Object.create(MeasurementView.prototype);
        obj.__wbg_ptr = ptr;
        MeasurementViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        MeasurementViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_measurementview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get coherence_rule2() {
        const ret = wasm.__wbg_get_measurementview_coherence_rule2(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get coherence_unitary() {
        const ret = wasm.__wbg_get_measurementview_coherence_unitary(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get entropy_rule2() {
        const ret = wasm.__wbg_get_measurementview_entropy_rule2(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get entropy_unitary() {
        const ret = wasm.__wbg_get_measurementview_entropy_unitary(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get p0() {
        const ret = wasm.__wbg_get_measurementview_p0(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get p1() {
        const ret = wasm.__wbg_get_measurementview_p1(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get witness_rule2() {
        const ret = wasm.__wbg_get_measurementview_witness_rule2(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get witness_unitary() {
        const ret = wasm.__wbg_get_measurementview_witness_unitary(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set coherence_rule2(arg0) {
        wasm.__wbg_set_measurementview_coherence_rule2(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set coherence_unitary(arg0) {
        wasm.__wbg_set_measurementview_coherence_unitary(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set entropy_rule2(arg0) {
        wasm.__wbg_set_measurementview_entropy_rule2(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set entropy_unitary(arg0) {
        wasm.__wbg_set_measurementview_entropy_unitary(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set p0(arg0) {
        wasm.__wbg_set_measurementview_p0(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set p1(arg0) {
        wasm.__wbg_set_measurementview_p1(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set witness_rule2(arg0) {
        wasm.__wbg_set_measurementview_witness_rule2(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set witness_unitary(arg0) {
        wasm.__wbg_set_measurementview_witness_unitary(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) MeasurementView.prototype[Symbol.dispose] = MeasurementView.prototype.free;

export class PacketView {
    static __wrap(ptr) {
        const obj = Object.create(PacketView.prototype);
        obj.__wbg_ptr = ptr;
        PacketViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        PacketViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_packetview_free(ptr, 0);
    }
    /**
     * Probability densities of the two single-particle packets.
     * @returns {Float64Array}
     */
    get density_a() {
        const ret = wasm.__wbg_get_packetview_density_a(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get density_b() {
        const ret = wasm.__wbg_get_packetview_density_b(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get nu() {
        const ret = wasm.__wbg_get_packetview_nu(this.__wbg_ptr);
        return ret;
    }
    /**
     * One-particle density of the symmetrized pair, `∫|Ψ(x, y)|² dy`.
     * @returns {Float64Array}
     */
    get pair_density() {
        const ret = wasm.__wbg_get_packetview_pair_density(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get single_a() {
        const ret = wasm.__wbg_get_packetview_single_a(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get single_b() {
        const ret = wasm.__wbg_get_packetview_single_b(this.__wbg_ptr);
        return ret;
    }
    /**
     * Symmetrized position observable in the symmetrized state.
     * @returns {number}
     */
    get two_particle() {
        const ret = wasm.__wbg_get_packetview_two_particle(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get x() {
        const ret = wasm.__wbg_get_packetview_x(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Probability densities of the two single-particle packets.
     * @param {Float64Array} arg0
     */
    set density_a(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_packetview_density_a(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {Float64Array} arg0
     */
    set density_b(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_packetview_density_b(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set nu(arg0) {
        wasm.__wbg_set_packetview_nu(this.__wbg_ptr, arg0);
    }
    /**
     * One-particle density of the symmetrized pair, `∫|Ψ(x, y)|² dy`.
     * @param {Float64Array} arg0
     */
    set pair_density(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_packetview_pair_density(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set single_a(arg0) {
        wasm.__wbg_set_packetview_single_a(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set single_b(arg0) {
        wasm.__wbg_set_packetview_single_b(this.__wbg_ptr, arg0);
    }
    /**
     * Symmetrized position observable in the symmetrized state.
     * @param {number} arg0
     */
    set two_particle(arg0) {
        wasm.__wbg_set_packetview_two_particle(this.__wbg_ptr, arg0);
    }
    /**
     * @param {Float64Array} arg0
     */
    set x(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_packetview_x(this.__wbg_ptr, ptr0, len0);
    }
}
if (Symbol.dispose) PacketView.prototype[Symbol.dispose] = PacketView.prototype.free;

/**
 * Symmetrized packets at `(center_a, width_a)` and `(center_b, width_b)`.
 * @param {number} center_a
 * @param {number} width_a
 * @param {number} center_b
 * @param {number} width_b
 * @param {boolean} fermion
 * @returns {PacketView}
 */
export function discrepancy(center_a, width_a, center_b, width_b, fermion) {
    const ret = wasm.discrepancy(center_a, width_a, center_b, width_b, fermion);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return PacketView.__wrap(ret[0]);
}

/**
 * Packet at the origin plus a second one at `center_b`, observed through the
 * position operator restricted to `[−half_width, half_width]`.
 * @param {number} center_b
 * @param {number} half_width
 * @param {boolean} fermion
 * @returns {LocalityView}
 */
export function locality(center_b, half_width, fermion) {
    const ret = wasm.locality(center_b, half_width, fermion);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return LocalityView.__wrap(ret[0]);
}

/**
 * Premeasurement of `σz` on `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` followed by
 * objectification.
 * @param {number} theta
 * @param {number} phase
 * @returns {MeasurementView}
 */
export function qubit_measurement(theta, phase) {
    const ret = wasm.qubit_measurement(theta, phase);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return MeasurementView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./gemenge_web_bg.js": import0,
    };
}

const LocalityViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_localityview_free(ptr, 1));
const MeasurementViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_measurementview_free(ptr, 1));
const PacketViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_packetview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('gemenge_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
