//! Wootters' formula on states that are not X-shaped, checked against the
//! pure-state value 2|ad - bc| for |psi> = a|00> + b|01> + c|10> + d|11>.

use rindler_noise::concurrence::{wootters_concurrence, xstate_concurrence};
use rindler_noise::{ComplexMatrix, DensityMatrix, Strictness, C64};

fn main() -> rindler_noise::Result<()> {
    let kets = [
        [
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.8, 0.0),
        ],
        [
            C64::new(0.5, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.5, 0.0),
            C64::new(-0.5, 0.0),
        ],
        [
            C64::new(0.3, 0.4),
            C64::new(0.1, -0.2),
            C64::new(0.0, 0.5),
            C64::new(0.6, 0.1),
        ],
    ];
    for ket in kets {
        let norm = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let ket = ket.map(|z| z / norm);
        let rho = DensityMatrix::new(ComplexMatrix::projector(&ket), Strictness::Strict)?;
        let exact = 2.0 * (ket[0] * ket[3] - ket[1] * ket[2]).norm();
        let w = wootters_concurrence(&rho)?;
        let x = match xstate_concurrence(&rho) {
            Ok(c) => format!("{:.12}", c.value),
            Err(e) => format!("n/a ({e})"),
        };
        println!("exact {exact:.12}  wootters {:.12}  x-form {x}", w.value);
    }
    Ok(())
}
