use std::ffi::CString;
use std::process::Command;
use std::ptr;

use genboost_capi::*;

fn c_path(p: &std::path::Path) -> CString {
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0i8; 256];
    let len = unsafe { gb_last_error_message(buf.as_mut_ptr() as *mut _, buf.len()) };
    let bytes: Vec<u8> = buf[..len.min(255)].iter().map(|&b| b as u8).collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn generate_train_save_load_predict() {
    let dir = tempfile::tempdir().unwrap();
    let data_dir = c_path(&dir.path().join("data"));

    let mut dataset: *mut GbDataset = ptr::null_mut();
    let status =
        unsafe { gb_dataset_generate(data_dir.as_ptr(), 20, 8, 7, 0.0, &mut dataset) };
    assert_eq!(status, GbStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { gb_dataset_len(dataset) }, 20);

    let (mut w, mut h) = (0u32, 0u32);
    assert_eq!(
        unsafe { gb_dataset_window(dataset, &mut w, &mut h) },
        GbStatus::Ok
    );
    assert_eq!((w, h), (8, 8));

    let mut model: *mut GbModel = ptr::null_mut();
    let status = unsafe { gb_train_exhaustive(dataset, 3, &mut model) };
    assert_eq!(status, GbStatus::Ok, "{}", last_error());
    // difficulty 0 data is separable, so training short-circuits
    assert_eq!(unsafe { gb_model_stages(model) }, 1);

    let mut err = f64::NAN;
    assert_eq!(
        unsafe { gb_model_error(model, dataset, &mut err) },
        GbStatus::Ok
    );
    assert_eq!(err, 0.0);

    let model_path = c_path(&dir.path().join("model.txt"));
    assert_eq!(
        unsafe { gb_model_save(model, model_path.as_ptr()) },
        GbStatus::Ok
    );
    let mut reloaded: *mut GbModel = ptr::null_mut();
    assert_eq!(
        unsafe { gb_model_load(model_path.as_ptr(), &mut reloaded) },
        GbStatus::Ok
    );
    assert_eq!(unsafe { gb_model_stages(reloaded) }, 1);

    // a bright-right window should classify as +1, like the generated positives
    let mut pixels = vec![0u8; 64];
    for y in 0..8 {
        for x in 4..8 {
            pixels[y * 8 + x] = 200;
        }
    }
    let mut label = 0i32;
    assert_eq!(
        unsafe { gb_model_predict(reloaded, pixels.as_ptr(), 8, 8, &mut label) },
        GbStatus::Ok
    );
    assert_eq!(label, 1);

    unsafe {
        gb_model_free(model);
        gb_model_free(reloaded);
        gb_dataset_free(dataset);
    }
}

#[test]
fn genetic_training_works_through_the_abi() {
    let dir = tempfile::tempdir().unwrap();
    let data_dir = c_path(&dir.path().join("data"));
    let mut dataset: *mut GbDataset = ptr::null_mut();
    assert_eq!(
        unsafe { gb_dataset_generate(data_dir.as_ptr(), 24, 8, 1, 0.4, &mut dataset) },
        GbStatus::Ok
    );

    let mut params = gb_genetic_params_default();
    params.seed = 5;
    let mut model: *mut GbModel = ptr::null_mut();
    let status = unsafe { gb_train_genetic(dataset, 4, &params, &mut model) };
    assert_eq!(status, GbStatus::Ok, "{}", last_error());
    assert!(unsafe { gb_model_stages(model) } >= 1);

    unsafe {
        gb_model_free(model);
        gb_dataset_free(dataset);
    }
}

#[test]
fn null_and_bad_arguments_return_codes() {
    let mut out: *mut GbDataset = ptr::null_mut();
    assert_eq!(
        unsafe { gb_dataset_load(ptr::null(), &mut out) },
        GbStatus::NullPointer
    );
    let missing = CString::new("/nonexistent/manifest.txt").unwrap();
    assert_eq!(
        unsafe { gb_dataset_load(missing.as_ptr(), &mut out) },
        GbStatus::IoError
    );
    assert!(!last_error().is_empty());

    let mut model: *mut GbModel = ptr::null_mut();
    assert_eq!(
        unsafe { gb_train_exhaustive(ptr::null(), 1, &mut model) },
        GbStatus::NullPointer
    );

    // invalid genetic params are rejected before training
    let dir = tempfile::tempdir().unwrap();
    let data_dir = c_path(&dir.path().join("d"));
    let mut dataset: *mut GbDataset = ptr::null_mut();
    assert_eq!(
        unsafe { gb_dataset_generate(data_dir.as_ptr(), 10, 8, 0, 0.2, &mut dataset) },
        GbStatus::Ok
    );
    let mut params = gb_genetic_params_default();
    params.crossover_rate = 0.0;
    assert_eq!(
        unsafe { gb_train_genetic(dataset, 1, &params, &mut model) },
        GbStatus::InvalidArgument
    );
    unsafe { gb_dataset_free(dataset) };

    assert_eq!(unsafe { gb_dataset_len(ptr::null()) }, 0);
    unsafe {
        gb_dataset_free(ptr::null_mut());
        gb_model_free(ptr::null_mut());
    }

    let version = unsafe { std::ffi::CStr::from_ptr(gb_version()) };
    assert!(!version.to_str().unwrap().is_empty());
}

/// The generated header must stand alone as C.
#[test]
fn header_compiles_as_c() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/genboost.h");
    assert!(header.exists(), "header not generated at {header:?}");

    let compiler = ["cc", "gcc", "clang"].iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
    });
    let Some(compiler) = compiler else {
        eprintln!("no C compiler found, skipping compile check");
        return;
    };

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        "#include \"genboost.h\"\n\
         int main(void) {\n\
           GbGeneticParams p = gb_genetic_params_default();\n\
           (void)p;\n\
           return GB_STATUS_OK;\n\
         }\n",
    )
    .unwrap();
    let out = dir.path().join("smoke.o");
    let result = Command::new(compiler)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg("-c")
        .arg(&src)
        .arg("-o")
        .arg(&out)
        .output()
        .unwrap();
    assert!(
        result.status.success(),
        "header failed to compile:\n{}",
        String::from_utf8_lossy(&result.stderr)
    );
}
