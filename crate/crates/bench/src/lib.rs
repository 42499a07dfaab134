//! Problem fixtures shared by the benchmarks.

use morsify::{parse_input, ProblemSpec};

pub const WHITNEY: &str = include_str!("../../../inputs/whitney.mrs");
pub const FIVE_ROOTS: &str = include_str!("../../../inputs/ex63.mrs");
pub const THREE_CUSPS: &str = include_str!("../../../inputs/threecusps_c5_2.mrs");

/// Six real roots sharing initial segments, two conjugate pairs (one double).
pub const SIX_ROOTS: &str = "\
field t: minpoly = t^2 + 1; conj = -t
unit = 2 + x*y
real_root = -x^(1/2) + 3/4*x^(5/4)
real_root = -x^(1/2) - 2/3*x^(5/4)
real_root = x^(1/2) + x^(3/2)
real_root = x^(1/2) + 5/7*x^(3/2) + x^(7/3)
real_root = x^(1/2) + 5/7*x^(3/2) - 9/4*x^(7/3)
real_root = 1/3*x^(3/4)
complex_root = x^(1/2) + t*x
complex_root = x^(1/2) - t*x
complex_root = (1/2 + 3*t)*x^(2/3); mult = 2
complex_root = (1/2 - 3*t)*x^(2/3); mult = 2
";

pub fn fixture(text: &str) -> ProblemSpec {
    parse_input(text).expect("fixture parses")
}

pub fn all() -> [(&'static str, &'static str); 4] {
    [("whitney", WHITNEY), ("five_roots", FIVE_ROOTS), ("three_cusps", THREE_CUSPS), ("six_roots", SIX_ROOTS)]
}
