use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use lucasap::{
    certified_enumerate, detect_families, find_aps, solve_all, sunit_constant, CertifyConfig, DomainFilter, Kind,
    SeqParams,
};

fn search(c: &mut Criterion) {
    let p = SeqParams::new(1, 1).unwrap();
    c.bench_function("find_aps fibonacci n=100", |b| b.iter(|| find_aps(black_box(p), Kind::First, 100)));
    c.bench_function("find_aps fibonacci n=300", |b| b.iter(|| find_aps(black_box(p), Kind::First, 300)));
    let q = SeqParams::new(-1, 2).unwrap();
    c.bench_function("detect_families e=12", |b| b.iter(|| detect_families(black_box(q), Kind::First, 12)));
}

fn certify(c: &mut Criterion) {
    let config = CertifyConfig::default();
    for (a, bb) in [(2, 1), (1, 3), (5, -4)] {
        let p = SeqParams::new(a, bb).unwrap();
        c.bench_function(&format!("certify ({a},{bb})"), |b| {
            b.iter(|| certified_enumerate(black_box(p), Kind::First, &config))
        });
    }
    c.bench_function("certify grid |A|,|B| <= 4", |b| {
        b.iter(|| {
            let mut n = 0;
            for a in -4..=4 {
                for bb in -4..=4 {
                    let Ok(p) = SeqParams::new(a, bb) else { continue };
                    if p.is_dominant() && certified_enumerate(p, Kind::Second, &config).is_ok() {
                        n += 1;
                    }
                }
            }
            n
        })
    });
}

fn symbolic(c: &mut Criterion) {
    let filter = DomainFilter::default();
    let mut g = c.benchmark_group("smallcase");
    g.sample_size(10);
    g.bench_function("solve_all first m<=5", |b| b.iter(|| solve_all(Kind::First, black_box(5), &filter)));
    g.bench_function("solve_all second m<=5", |b| b.iter(|| solve_all(Kind::Second, black_box(5), &filter)));
    g.finish();
    c.bench_function("sunit constant", |b| b.iter(sunit_constant));
}

criterion_group!(benches, search, certify, symbolic);
criterion_main!(benches);
