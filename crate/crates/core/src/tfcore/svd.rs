use super::op::{rank_one, Op};
use super::signal::Signal;

/// Singular values below this fraction of the largest one are treated as zero.
pub const RANK_TOL: f64 = 1e-12;

/// `S = sum_n s_n xi_n (x) phi_n` with orthonormal `{xi_n}` and `{phi_n}`,
/// singular values in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub values: Vec<f64>,
    pub left: Vec<Signal>,
    pub right: Vec<Signal>,
}

impl Svd {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn trace_norm(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn reconstruct(&self, dim: usize) -> Op {
        let mut acc = Op::zeros(dim).expect("dim >= 2");
        for ((s, xi), phi) in self.values.iter().zip(&self.left).zip(&self.right) {
            let term = rank_one(xi, phi).expect("equal lengths").scale_real(*s);
            acc = &acc + &term;
        }
        acc
    }
}

/// Singular value decomposition, truncated at numerical rank.
pub fn svd(s: &Op) -> Svd {
    let dim = s.dim();
    let dec = s.matrix().clone().svd(true, true);
    let u = dec.u.expect("left vectors requested");
    let v_t = dec.v_t.expect("right vectors requested");
    let mut order: Vec<usize> = (0..dec.singular_values.len()).collect();
    order.sort_by(|&a, &b| dec.singular_values[b].total_cmp(&dec.singular_values[a]));

    let top = order.first().map_or(0.0, |&i| dec.singular_values[i]);
    let mut out = Svd {
        values: Vec::new(),
        left: Vec::new(),
        right: Vec::new(),
    };
    if top == 0.0 {
        return out;
    }
    for i in order {
        let value = dec.singular_values[i];
        if value <= RANK_TOL * top {
            break;
        }
        out.values.push(value);
        out.left
            .push(Signal::new(u.column(i).iter().copied().collect()).expect("dim >= 2"));
        // Row i of V^* holds conj(phi_i).
        out.right
            .push(Signal::new((0..dim).map(|y| v_t[(i, y)].conj()).collect()).expect("dim >= 2"));
    }
    out
}
