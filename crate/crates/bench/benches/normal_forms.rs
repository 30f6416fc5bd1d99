use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use triloc::{localize_module, FamilyDescriptor, TRing, TripleModule};

const CASES: [(&str, &str, &str); 5] = [
    ("regular-Z", r#"{"kind":"regular","ring":"Z"}"#, "(x[3] + x[-2]*x[5])^6"),
    ("scaled-2", r#"{"kind":"scaled","k":2}"#, "(x[3]*x[5] + x[7])^5"),
    ("double-Q", r#"{"kind":"double","ring":"Q"}"#, "(x[(2,3)]*x[(0,1)] + x[(1,1)])^4"),
    ("tensor-free", r#"{"kind":"tensor-free","A_gens":["s","t"],"B_gens":["u"]}"#, "(x[t(s,u)] + x[t(1,u)]*x[t(t,1)])^4"),
    ("hnn-free", r#"{"kind":"hnn-free","gens":["s","t"]}"#, "(x[h(s,t)] + x[h(1,s)]*x[h(t)])^4"),
];

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (name, family, expr) in CASES {
        let t = TRing::new(FamilyDescriptor::parse(family).unwrap().build().unwrap());
        group.bench_function(name, |b| b.iter(|| t.parse(black_box(expr)).unwrap()));
    }
    group.finish();
}

fn localize(c: &mut Criterion) {
    let spec = r#"{"family":{"kind":"regular","ring":"Z"},
        "NA":{"gens":3,"rels":[[2,4,0],[0,6,3]]},
        "NB":{"gens":2,"rels":[]},
        "f":{"1":[[1,2,0],[0,1,3]]}}"#;
    let n = TripleModule::from_json(spec).unwrap();
    c.bench_function("localize-module/regular-Z", |b| b.iter(|| localize_module(black_box(&n), 1, 20).unwrap()));
}

criterion_group!(benches, normalize, localize);
criterion_main!(benches);
