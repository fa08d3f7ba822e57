//! C ABI over the classifier toolkit: opaque handles, status codes, and a
//! thread-local last-error message.
//!
//! Every function returning [`GbStatus`] reports failures through the return
//! code; `gb_last_error_message` retrieves the matching description. Handles
//! created by `gb_*_load`, `gb_dataset_generate` and `gb_train_*` own their
//! data and must be released with the matching `gb_*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use genboost::boost::{adaboost_train, WeakLearner};
use genboost::io::{gen_data, load_dataset, load_model, save_model, GenDataOptions};
use genboost::{
    classification_error, compute_integral, strong_predict, Dataset, ExhaustiveLearner,
    GeneticConfig, GeneticLearner, GrayImage, StrongClassifier,
};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    IoError = 3,
    TrainError = 4,
}

/// Genetic learner parameters. Mirrors the CLI defaults when constructed
/// with `gb_genetic_params_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GbGeneticParams {
    pub restarts_s: u64,
    pub population_n: u64,
    pub generations_kmax: u64,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub seed: u64,
}

/// Opaque dataset handle.
pub struct GbDataset {
    inner: Dataset,
}

/// Opaque trained-model handle.
pub struct GbModel {
    inner: StrongClassifier,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().map(|c| if c == '\0' { ' ' } else { c }).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn fail(status: GbStatus, msg: &str) -> GbStatus {
    set_error(msg);
    status
}

/// Copies the last error message for the current thread into `buf` as a
/// NUL-terminated string, truncating if needed. Returns the full message
/// length in bytes, excluding the terminator. `buf` may be null when only
/// the length is wanted.
#[no_mangle]
pub unsafe extern "C" fn gb_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn path_arg<'a>(ptr: *const c_char) -> Result<&'a Path, GbStatus> {
    if ptr.is_null() {
        set_error("null path");
        return Err(GbStatus::NullPointer);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(Path::new(s)),
        Err(_) => {
            set_error("path is not valid UTF-8");
            Err(GbStatus::InvalidArgument)
        }
    }
}

/// Loads a dataset from a manifest file. On success writes a fresh handle
/// to `out`.
#[no_mangle]
pub unsafe extern "C" fn gb_dataset_load(
    manifest_path: *const c_char,
    out: *mut *mut GbDataset,
) -> GbStatus {
    if out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    let path = match path_arg(manifest_path) {
        Ok(p) => p,
        Err(s) => return s,
    };
    match load_dataset(path) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GbDataset { inner }));
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::IoError, &e.to_string()),
    }
}

/// Generates a synthetic dataset on disk (images plus manifest) and loads
/// it into a fresh handle.
#[no_mangle]
pub unsafe extern "C" fn gb_dataset_generate(
    out_dir: *const c_char,
    count: u64,
    window: u64,
    seed: u64,
    difficulty: f64,
    out: *mut *mut GbDataset,
) -> GbStatus {
    if out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    let dir = match path_arg(out_dir) {
        Ok(p) => p,
        Err(s) => return s,
    };
    let opts = GenDataOptions {
        count: count as usize,
        window: window as usize,
        seed,
        difficulty,
    };
    let manifest = match gen_data(dir, &opts) {
        Ok(m) => m,
        Err(e) => return fail(GbStatus::InvalidArgument, &e.to_string()),
    };
    match load_dataset(&manifest) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GbDataset { inner }));
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::IoError, &e.to_string()),
    }
}

#[no_mangle]
pub unsafe extern "C" fn gb_dataset_free(dataset: *mut GbDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Number of samples, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gb_dataset_len(dataset: *const GbDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.len())
}

#[no_mangle]
pub unsafe extern "C" fn gb_dataset_window(
    dataset: *const GbDataset,
    width_out: *mut u32,
    height_out: *mut u32,
) -> GbStatus {
    let Some(d) = dataset.as_ref() else {
        return fail(GbStatus::NullPointer, "null dataset");
    };
    if width_out.is_null() || height_out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    *width_out = d.inner.window_w() as u32;
    *height_out = d.inner.window_h() as u32;
    GbStatus::Ok
}

#[no_mangle]
pub extern "C" fn gb_genetic_params_default() -> GbGeneticParams {
    let d = GeneticConfig::default();
    GbGeneticParams {
        restarts_s: d.restarts_s as u64,
        population_n: d.population_n as u64,
        generations_kmax: d.generations_kmax as u64,
        crossover_rate: d.crossover_rate,
        mutation_rate: d.mutation_rate,
        seed: d.seed,
    }
}

unsafe fn train(
    dataset: *const GbDataset,
    rounds: u32,
    learner: &dyn WeakLearner,
    out: *mut *mut GbModel,
) -> GbStatus {
    let Some(d) = dataset.as_ref() else {
        return fail(GbStatus::NullPointer, "null dataset");
    };
    if out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    match adaboost_train(&d.inner, learner, rounds as usize, &mut |_| {}) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GbModel { inner }));
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::TrainError, &e.to_string()),
    }
}

/// Trains with the exhaustive weak learner.
#[no_mangle]
pub unsafe extern "C" fn gb_train_exhaustive(
    dataset: *const GbDataset,
    rounds: u32,
    out: *mut *mut GbModel,
) -> GbStatus {
    train(dataset, rounds, &ExhaustiveLearner { parallel: false }, out)
}

/// Trains with the genetic weak learner.
#[no_mangle]
pub unsafe extern "C" fn gb_train_genetic(
    dataset: *const GbDataset,
    rounds: u32,
    params: *const GbGeneticParams,
    out: *mut *mut GbModel,
) -> GbStatus {
    let Some(p) = params.as_ref() else {
        return fail(GbStatus::NullPointer, "null params");
    };
    let config = GeneticConfig {
        population_n: p.population_n as usize,
        generations_kmax: p.generations_kmax as usize,
        crossover_rate: p.crossover_rate,
        mutation_rate: p.mutation_rate,
        restarts_s: p.restarts_s as usize,
        seed: p.seed,
    };
    if let Err(e) = config.validate() {
        return fail(GbStatus::InvalidArgument, &e.to_string());
    }
    train(
        dataset,
        rounds,
        &GeneticLearner::new(config, false),
        out,
    )
}

#[no_mangle]
pub unsafe extern "C" fn gb_model_free(model: *mut GbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Stage count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gb_model_stages(model: *const GbModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.stages.len())
}

#[no_mangle]
pub unsafe extern "C" fn gb_model_save(model: *const GbModel, path: *const c_char) -> GbStatus {
    let Some(m) = model.as_ref() else {
        return fail(GbStatus::NullPointer, "null model");
    };
    let path = match path_arg(path) {
        Ok(p) => p,
        Err(s) => return s,
    };
    match save_model(path, &m.inner) {
        Ok(()) => GbStatus::Ok,
        Err(e) => fail(GbStatus::IoError, &e.to_string()),
    }
}

#[no_mangle]
pub unsafe extern "C" fn gb_model_load(path: *const c_char, out: *mut *mut GbModel) -> GbStatus {
    if out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    let path = match path_arg(path) {
        Ok(p) => p,
        Err(s) => return s,
    };
    match load_model(path) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GbModel { inner }));
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::IoError, &e.to_string()),
    }
}

/// Classifies one window given as `width * height` row-major 8-bit pixels.
/// Writes +1 or -1 to `label_out`.
#[no_mangle]
pub unsafe extern "C" fn gb_model_predict(
    model: *const GbModel,
    pixels: *const u8,
    width: u32,
    height: u32,
    label_out: *mut i32,
) -> GbStatus {
    let Some(m) = model.as_ref() else {
        return fail(GbStatus::NullPointer, "null model");
    };
    if pixels.is_null() || label_out.is_null() {
        return fail(GbStatus::NullPointer, "null pixels or output pointer");
    }
    let len = width as usize * height as usize;
    let data = std::slice::from_raw_parts(pixels, len).to_vec();
    let image = match GrayImage::new(width as usize, height as usize, data) {
        Ok(i) => i,
        Err(e) => return fail(GbStatus::InvalidArgument, &e.to_string()),
    };
    match strong_predict(&m.inner, &compute_integral(&image)) {
        Ok(label) => {
            *label_out = label as i32;
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::InvalidArgument, &e.to_string()),
    }
}

/// Classification error of the model on a dataset, in [0, 1].
#[no_mangle]
pub unsafe extern "C" fn gb_model_error(
    model: *const GbModel,
    dataset: *const GbDataset,
    error_out: *mut f64,
) -> GbStatus {
    let Some(m) = model.as_ref() else {
        return fail(GbStatus::NullPointer, "null model");
    };
    let Some(d) = dataset.as_ref() else {
        return fail(GbStatus::NullPointer, "null dataset");
    };
    if error_out.is_null() {
        return fail(GbStatus::NullPointer, "null output pointer");
    }
    match classification_error(&m.inner, &d.inner) {
        Ok(err) => {
            *error_out = err;
            GbStatus::Ok
        }
        Err(e) => fail(GbStatus::InvalidArgument, &e.to_string()),
    }
}
