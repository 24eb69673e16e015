use gasp_core::generators::{gen_random, RandomSpec, RandomTopology};
use gasp_core::io::{parse_instance, render_instance};

const GOLDEN: &str = include_str!("golden/random_seed42_path_n6_p2.json");

#[test]
fn seeded_path_instance_is_frozen() {
    let spec = RandomSpec { seed: 42, topology: RandomTopology::Path, n: 6, p: 2, approval: 0.5, ties: 0.2 };
    assert_eq!(render_instance(&gen_random(&spec)), GOLDEN);
}

#[test]
fn golden_file_parses() {
    let inst = parse_instance(GOLDEN).unwrap();
    assert_eq!((inst.n(), inst.p()), (6, 2));
    assert_eq!(inst.edges().len(), 5);
}
