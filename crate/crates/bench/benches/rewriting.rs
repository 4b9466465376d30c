use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ncgalois::action::{crossed_multiply, CrossedProduct, LeftAction};
use ncgalois::suites::numeric_point;
use ncgalois::{Catalog, HopfStructure, Rational, Registry, Scalar, Symbolic};

fn catalog() -> Catalog<Scalar> {
    Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic))
}

fn normal_forms(c: &mut Criterion) {
    let cat = catalog();
    let fb = cat.algebra("frame_bundle").unwrap();
    let f = fb.presentation().alphabet.clone();
    let expr = "Dinv*d*c*b*a*y*x*y + (p - q)*a*d*x*Dinv*y*b";
    let raw = ncgalois::presentations::parse_expr(expr, &f).unwrap();
    c.bench_function("nf frame_bundle degree 8", |b| {
        b.iter(|| {
            fb.system().clear_cache();
            black_box(fb.nf(&raw))
        })
    });

    let num = Catalog::<Rational>::new(Arc::new(Registry::standard()), Arc::new(numeric_point(0)));
    let nfb = num.algebra("frame_bundle").unwrap();
    let nraw = nfb.lift_poly(&raw).unwrap();
    c.bench_function("nf frame_bundle degree 8 numeric", |b| {
        b.iter(|| {
            nfb.system().clear_cache();
            black_box(nfb.nf(&nraw))
        })
    });
}

fn confluence(c: &mut Criterion) {
    let cat = catalog();
    let gl2 = cat.algebra("gl2").unwrap();
    c.bench_function("local confluence gl2 degree 6", |b| b.iter(|| black_box(gl2.system().check_local_confluence(6))));
}

fn structure(c: &mut Criterion) {
    let cat = catalog();
    let hopf = Arc::new(HopfStructure::from_catalog(&cat).unwrap());
    c.bench_function("hopf axioms degree 2", |b| b.iter(|| black_box(hopf.check_axioms(2))));

    let act = Arc::new(LeftAction::from_catalog(&cat, hopf.clone(), "frame_action").unwrap());
    let cp = CrossedProduct::smash(act.clone());
    let (h, m) = (hopf.algebra().clone(), act.module().clone());
    let (b1, h1) = (m.parse("x*y + y").unwrap(), h.parse("a*b + Dinv").unwrap());
    let (b2, h2) = (m.parse("x*x").unwrap(), h.parse("c*d").unwrap());
    c.bench_function("crossed multiply", |b| b.iter(|| black_box(crossed_multiply(&cp, (&b1, &h1), (&b2, &h2)))));
}

criterion_group!(benches, normal_forms, confluence, structure);
criterion_main!(benches);
