//! Rank, kernels and Smith normal form over ℚ, GF(2) and ℤ.

use modcov::exactmat::{BitMatrix, IntegerMatrix, RationalMatrix, ResidueMatrix};

fn main() {
    let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    println!("rank over Q: {}", m.rank());
    for v in m.kernel_basis() {
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("kernel vector: [{}]", shown.join(", "));
    }

    // rank over GF(2) of the same pattern reduced mod 2
    let bits = BitMatrix::from_fn(3, 3, |r, c| (r * 3 + c + 1) % 2 == 1);
    println!("rank over GF(2): {}", bits.rank());

    let z = IntegerMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf: Vec<String> = z.smith_normal_form().iter().map(|d| d.to_string()).collect();
    println!("Smith form diagonal: [{}]", snf.join(", "));

    // x + 2y = 0 over Z/6
    let r = ResidueMatrix::from_signed(6, 1, 2, &[1, 2]).expect("valid modulus");
    let k = r.kernel();
    println!("kernel of [1 2] mod 6: {} elements, generator orders {:?}", k.size().expect("fits"), k.orders());
}
