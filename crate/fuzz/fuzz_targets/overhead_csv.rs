#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use risce::sim::output::{parse_overhead_csv, write_overhead_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = parse_overhead_csv(data, Path::new("fuzz")) {
        let mut buf = Vec::new();
        write_overhead_csv(&mut buf, &rows).unwrap();
        assert_eq!(parse_overhead_csv(buf.as_slice(), Path::new("fuzz")).unwrap(), rows);
    }
});
