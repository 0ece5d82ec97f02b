use std::time::Instant;

#[test]
fn timing_h_sequence_60() {
    let t0 = Instant::now();
    let list = abfact::hcn::hcn_up_to(1_000_000).unwrap();
    eprintln!("scan 1e6: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let h = abfact::hcn::h_sequence(&list, 60).unwrap();
    eprintln!("h_sequence(60): {:?}", t0.elapsed());
    let n_exact = h.iter().filter(|e| e.is_exact()).count();
    eprintln!("exact elements: {n_exact}");
    let t0 = Instant::now();
    for (i, e) in h.iter().enumerate().take(25) {
        let v = e.value().unwrap();
        eprintln!("h_{} ~ {} digits", i + 1, v.to_string().len());
    }
    eprintln!("materialize 25: {:?}", t0.elapsed());
}

#[test]
fn timing_hcn_scan_1e8() {
    let t0 = Instant::now();
    let list = abfact::hcn::hcn_up_to(100_000_000).unwrap();
    eprintln!("scan 1e8: {:?} entries {}", t0.elapsed(), list.entries().len());
}
