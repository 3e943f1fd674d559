use dessinkit::belyi::{belyi_reduce_detailed, is_belyi_polynomial};
use dessinkit::error::Error;
use dessinkit::poly::RatPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn completion_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    let mut blown = 0;
    let t0 = std::time::Instant::now();
    for i in 0..200 {
        let f = loop {
            let coeffs: Vec<i64> = (0..7).map(|_| rng.random_range(-5..=5)).collect();
            let f = RatPoly::from_ints(&coeffs);
            if f.degree().map_or(false, |d| d >= 1) {
                break f;
            }
        };
        match belyi_reduce_detailed(&f) {
            Ok(red) => {
                assert!(is_belyi_polynomial(&red.result).unwrap(), "sample {}", i);
                done += 1;
            }
            Err(Error::BelyiDegreeTooLarge { .. }) => blown += 1,
            Err(e) => panic!("sample {} unexpected error {}", i, e),
        }
        if t0.elapsed().as_secs() > 420 { eprintln!("TIMEBOX at sample {}", i); break; }
    }
    eprintln!("completed {} / blown {} in {:?}", done, blown, t0.elapsed());
}
