use linlay::linalg::{FieldSpec, Subspace};
use linlay::trajectory::enumerate_uk;
use std::time::Instant;

fn main() {
    for (d, k, q) in [(0usize, 2usize, 2u16), (1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 1, 2), (2, 1, 3)] {
        let f = FieldSpec::new(q);
        let b = if d == 0 { Subspace::zero(f, 0) } else { Subspace::full(f, d) };
        let t = Instant::now();
        match enumerate_uk(&b, k) {
            Ok(u) => println!("dim {d} k {k} GF({q}): |U| = {} in {:?}", u.len(), t.elapsed()),
            Err(e) => println!("dim {d} k {k} GF({q}): {e}"),
        }
    }
}
