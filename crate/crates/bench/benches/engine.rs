use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gerbegw::base::kontsevich::kontsevich_nd;
use gerbegw::frobenius::{base_deformed_product, Deformation};
use gerbegw::gerbe::GerbeSpec;
use gerbegw::{
    builtin_theory, check_wdvv, gerbe_quantum_product, verify_decomposition, AbelianGroup,
    CurveClass, Limits, Truncation,
};

fn kontsevich(c: &mut Criterion) {
    c.bench_function("kontsevich N_8", |b| b.iter(|| kontsevich_nd(black_box(8))));
}

fn decomposition(c: &mut Criterion) {
    let p2 = builtin_theory("P2").unwrap();
    let spec = GerbeSpec::root(3, vec![1]).unwrap();
    let tr = Truncation {
        beta_max: CurveClass::degree(2),
        n_max: 5,
        psi_max: 0,
    };
    c.bench_function("decomposition P2 mu3 beta<=2 n<=5", |b| {
        b.iter(|| verify_decomposition(&spec, &p2, &tr, &Limits::default()).unwrap())
    });
}

fn quantum_products(c: &mut Criterion) {
    let p2 = builtin_theory("P2").unwrap();
    let deformation = Deformation {
        directions: vec![2],
        order: 11,
    };
    c.bench_function("big P2 product beta<=3 with WDVV", |b| {
        b.iter(|| {
            let qp = base_deformed_product(
                &p2,
                &CurveClass::degree(3),
                &deformation,
                &Limits::default(),
            )
            .unwrap();
            check_wdvv(&qp)
        })
    });
    let spec = GerbeSpec::new(
        AbelianGroup::new(vec![2, 3]).unwrap(),
        vec![vec![1], vec![2]],
    )
    .unwrap();
    c.bench_function("gerbe product P2 mu2xmu3 beta<=2", |b| {
        b.iter(|| {
            gerbe_quantum_product(&spec, &p2, &CurveClass::degree(2), &Limits::default()).unwrap()
        })
    });
}

criterion_group!(benches, kontsevich, decomposition, quantum_products);
criterion_main!(benches);
