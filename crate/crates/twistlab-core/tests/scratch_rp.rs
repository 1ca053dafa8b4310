use twistlab_core::catalog::{build_twist, declared_r, Family, R_SIGN};
use twistlab_core::hopf::classical_r;

#[test]
fn inspect_rp() {
    let f = build_twist(Family::PeriphericRp, 2);
    let r = classical_r(&f).unwrap();
    println!("machine:   {:?}", r);
    println!("declared-: {:?}", declared_r(Family::PeriphericRp).unwrap().scale(R_SIGN));
}
