#![no_main]

use libfuzzer_sys::fuzz_target;
use risce::sim::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = ExperimentConfig::from_toml_str(text) {
        // anything that parses must also validate and expand without panicking
        let _ = cfg.validate();
        let _ = cfg.overhead_splits();
    }
});
