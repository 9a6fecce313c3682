/* @ts-self-types="./biphoton_web.d.ts" */

/**
 * Input and output intensities on the same grid, row = signal, column = idler.
 */
export class Panel {
    static __wrap(ptr) {
        const obj = Object.create(Panel.prototype);
        obj.__wbg_ptr = ptr;
        PanelFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        PanelFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_panel_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get entropy_in() {
        const ret = wasm.__wbg_get_panel_entropy_in(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get entropy_out() {
        const ret = wasm.__wbg_get_panel_entropy_out(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get epsilon_used() {
        const ret = wasm.__wbg_get_panel_epsilon_used(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get lyapunov_residual() {
        const ret = wasm.__wbg_get_panel_lyapunov_residual(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get total_variation() {
        const ret = wasm.__wbg_get_panel_total_variation(this.__wbg_ptr);
        return ret;
    }
    /**
     * Row-major, normalized so that the maximum is 1.
     * @returns {Float64Array}
     */
    get input() {
        const ret = wasm.panel_input(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get n() {
        const ret = wasm.panel_n(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {Float64Array}
     */
    get output() {
        const ret = wasm.panel_output(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} arg0
     */
    set entropy_in(arg0) {
        wasm.__wbg_set_panel_entropy_in(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set entropy_out(arg0) {
        wasm.__wbg_set_panel_entropy_out(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set epsilon_used(arg0) {
        wasm.__wbg_set_panel_epsilon_used(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set lyapunov_residual(arg0) {
        wasm.__wbg_set_panel_lyapunov_residual(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set total_variation(arg0) {
        wasm.__wbg_set_panel_total_variation(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Panel.prototype[Symbol.dispose] = Panel.prototype.free;

export class Scenario {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ScenarioFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_scenario_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get diff_width() {
        const ret = wasm.__wbg_get_scenario_diff_width(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get epsilon() {
        const ret = wasm.__wbg_get_scenario_epsilon(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get g() {
        const ret = wasm.__wbg_get_scenario_g(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get materials() {
        const ret = wasm.__wbg_get_scenario_materials(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get n() {
        const ret = wasm.__wbg_get_scenario_n(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get omega_c() {
        const ret = wasm.__wbg_get_scenario_omega_c(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get omega_i() {
        const ret = wasm.__wbg_get_scenario_omega_i(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get omega_s() {
        const ret = wasm.__wbg_get_scenario_omega_s(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get sqrt_kappa() {
        const ret = wasm.__wbg_get_scenario_sqrt_kappa(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get sum_width() {
        const ret = wasm.__wbg_get_scenario_sum_width(this.__wbg_ptr);
        return ret;
    }
    /**
     * Frequencies of the (shared) signal and idler axis in meV.
     * @returns {Float64Array}
     */
    axis() {
        const ret = wasm.scenario_axis(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    constructor() {
        const ret = wasm.scenario_new();
        this.__wbg_ptr = ret;
        ScenarioFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
    /**
     * @param {number} arg0
     */
    set diff_width(arg0) {
        wasm.__wbg_set_scenario_diff_width(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set epsilon(arg0) {
        wasm.__wbg_set_scenario_epsilon(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set g(arg0) {
        wasm.__wbg_set_scenario_g(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set materials(arg0) {
        wasm.__wbg_set_scenario_materials(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set n(arg0) {
        wasm.__wbg_set_scenario_n(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set omega_c(arg0) {
        wasm.__wbg_set_scenario_omega_c(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set omega_i(arg0) {
        wasm.__wbg_set_scenario_omega_i(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set omega_s(arg0) {
        wasm.__wbg_set_scenario_omega_s(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set sqrt_kappa(arg0) {
        wasm.__wbg_set_scenario_sqrt_kappa(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set sum_width(arg0) {
        wasm.__wbg_set_scenario_sum_width(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Scenario.prototype[Symbol.dispose] = Scenario.prototype.free;

/**
 * @param {Scenario} s
 * @param {Float64Array} kappas
 * @returns {Float64Array}
 */
export function entropyCurve(s, kappas) {
    _assertClass(s, Scenario);
    const ptr0 = passArrayF64ToWasm0(kappas, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.entropyCurve(s.__wbg_ptr, ptr0, len0);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}

/**
 * @param {Scenario} s
 * @returns {Float64Array}
 */
export function inputJsi(s) {
    _assertClass(s, Scenario);
    const ret = wasm.inputJsi(s.__wbg_ptr);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {Scenario} s
 * @returns {Panel}
 */
export function propagate(s) {
    _assertClass(s, Scenario);
    const ret = wasm.propagate(s.__wbg_ptr);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Panel.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_92b29b0548f8b746: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_344f42d3211c4765: function(arg0, arg1) {
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
        "./biphoton_web_bg.js": import0,
    };
}

const PanelFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_panel_free(ptr, 1));
const ScenarioFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_scenario_free(ptr, 1));

function _assertClass(instance, klass) {
    if (!(instance instanceof klass)) {
        throw new Error(`expected instance of ${klass.name}`);
    }
}

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
        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = module.ok && expectedResponseType(module.type);

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
        module_or_path = new URL('biphoton_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
