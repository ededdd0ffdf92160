#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use risce::sim::output::{parse_nmse_csv, write_nmse_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = parse_nmse_csv(data, Path::new("fuzz")) {
        let mut buf = Vec::new();
        write_nmse_csv(&mut buf, &rows).unwrap();
        let again = parse_nmse_csv(buf.as_slice(), Path::new("fuzz")).unwrap();
        assert_eq!(again.len(), rows.len());
    }
});
