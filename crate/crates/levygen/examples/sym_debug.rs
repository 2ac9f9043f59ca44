use levygen::symbols::{psi_exact, psi_h, SchemeKind, StableParams};
use levygen::weights::*;

fn main() {
    let p = StableParams::normalized(0.5, 0.5).unwrap();
    // Spectral at band edge, growing J
    for j in [100usize, 400, 1600, 6400] {
        let t = spectral_weights(&p, 1.0, j).unwrap();
        let got = symbol_of_weights(&t, std::f64::consts::PI);
        let want = psi_exact(&p, std::f64::consts::PI);
        println!("SP J={j}: got {got:.6}, want {want:.6}, diff {:.3e}, wsum {:.3e}", (got-want).norm(), t.weight_sum());
    }
    // RS weight sums
    for j in [512usize, 2048, 8192] {
        let t = rs_weights(&p, 0.5, j, 1e-10).unwrap();
        println!("RS J={j}: wsum {:.6e}", t.weight_sum());
    }
    // GL symbol at xi=1
    for j in [500usize, 2000, 8000] {
        let t = gl_weights(&p, 1.0, j).unwrap();
        let got = symbol_of_weights(&t, 1.0);
        let want = psi_h(SchemeKind::GrunwaldLetnikov, &p, 1.0, 1.0).unwrap();
        println!("GL J={j}: diff {:.3e}", (got-want).norm());
    }
}
