//! Cartan data, label systems, the phi-coloring and dual-lattice arithmetic.
//!
//! An [`AlgebraSpec`] fixes everything the interpolation machinery needs:
//! the Cartan matrix, the labels r_i, the lacing number of the ambient
//! scheme, the two-coloring phi and the dual labels. Values are immutable
//! after construction.

use crate::error::{Error, Result};

/// A weight in the fundamental-weight basis (one coordinate per node).
pub type Weight = Vec<i64>;

/// Result of projecting a weight to the dual weight lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Projected {
    Weight(Weight),
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    /// Cartan matrix C[i][j].
    pub cartan: Vec<Vec<i64>>,
    /// Labels r_i, each in {1, 2, 3}.
    pub labels: Vec<u8>,
    /// Lacing number of the interpolation scheme; the order of eps is 2*lacing.
    ///
    /// Uniform label-1 algebras (the A-type base cases) still run inside the
    /// double-laced scheme, so this is max(2, max r_i).
    pub lacing: u8,
    /// Two-coloring of the Dynkin diagram satisfying the sign constraints.
    pub phi: Vec<u8>,
    /// Langlands-dual type name, for reporting only.
    pub dual_name: String,
}

impl AlgebraSpec {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    pub fn label(&self, i: usize) -> u8 {
        self.labels[i]
    }

    /// Dual label r_i^v = 1 + r - r_i (with r the scheme lacing).
    pub fn rdual(&self, i: usize) -> u8 {
        1 + self.lacing - self.labels[i]
    }

    /// Order of eps = exp(i*pi/r).
    pub fn eps_order(&self) -> i32 {
        2 * self.lacing as i32
    }

    /// Nodes adjacent to `i` in the Dynkin diagram.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = i;
        self.nodes().filter(move |&j| j != row && self.cartan[row][j] < 0)
    }

    /// A node is long when its label equals the scheme lacing (single-variable
    /// unit W); otherwise its unit is a q-spread of width `lacing`.
    pub fn is_long(&self, i: usize) -> bool {
        self.labels[i] == self.lacing
    }

    pub fn phi(&self, i: usize) -> u8 {
        self.phi[i]
    }
}

/// Table entry: Cartan matrix and standard labels for a supported type.
fn base_type(type_id: &str) -> Result<(Vec<Vec<i64>>, Vec<u8>, &'static str)> {
    // A_n: path with all labels 1; duals of the non-simply-laced types below
    // follow the transposed affine Cartan matrices.
    let a_path = |n: usize| -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        c
    };
    match type_id {
        "A1" => Ok((a_path(1), vec![1], "A1(1)")),
        "A2" => Ok((a_path(2), vec![1, 1], "A2(1)")),
        "A3" => Ok((a_path(3), vec![1, 1, 1], "A3(1)")),
        // B2 and C2 name the same rank-2 algebra; first node long.
        "B2" | "C2" => {
            let mut c = a_path(2);
            c[1][0] = -2;
            Ok((c, vec![2, 1], "A3(2)"))
        }
        "B3" => {
            let mut c = a_path(3);
            c[2][1] = -2;
            Ok((c, vec![2, 2, 1], "A5(2)"))
        }
        "C3" => {
            let mut c = a_path(3);
            c[1][2] = -2;
            Ok((c, vec![1, 1, 2], "D4(2)"))
        }
        "F4" => {
            let mut c = a_path(4);
            c[2][1] = -2;
            Ok((c, vec![2, 2, 1, 1], "E6(2)"))
        }
        "G2" => {
            let mut c = a_path(2);
            c[1][0] = -3;
            Ok((c, vec![3, 1], "D4(3)"))
        }
        other => Err(Error::UnknownType(other.to_string())),
    }
}

/// Deterministic phi-coloring: `C[i][j] <= -2` forces `phi(i) = 1`, adjacent
/// nodes get opposite colors, and in an unconstrained component the
/// lowest-index node gets 0.
pub fn phi_coloring(cartan: &[Vec<i64>]) -> Result<Vec<u8>> {
    let n = cartan.len();
    let mut phi: Vec<Option<u8>> = vec![None; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && cartan[i][j] <= -2 {
                if phi[i] == Some(0) {
                    return Err(Error::InvalidLabels(
                        "phi constraints are unsatisfiable".into(),
                    ));
                }
                phi[i] = Some(1);
            }
        }
    }
    // propagate alternation over the (forest) diagram
    loop {
        let mut changed = false;
        for i in 0..n {
            if let Some(p) = phi[i] {
                for j in 0..n {
                    if i != j && cartan[i][j] < 0 {
                        let want = 1 - p;
                        match phi[j] {
                            None => {
                                phi[j] = Some(want);
                                changed = true;
                            }
                            Some(q) if q != want => {
                                return Err(Error::InvalidLabels(
                                    "phi constraints are unsatisfiable".into(),
                                ))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // free components: lowest-index uncolored node gets 0, then re-propagate
    for i in 0..n {
        if phi[i].is_none() {
            phi[i] = Some(0);
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                let p = phi[v].unwrap();
                for j in 0..n {
                    if v != j && cartan[v][j] < 0 && phi[j].is_none() {
                        phi[j] = Some(1 - p);
                        stack.push(j);
                    }
                }
            }
        }
    }
    Ok(phi.into_iter().map(|p| p.unwrap()).collect())
}

/// Build an algebra from a CLI-style type id, optionally multiplying all
/// labels by a uniform coefficient.
pub fn build_algebra(type_id: &str, labels_mult: Option<u8>) -> Result<AlgebraSpec> {
    let (cartan, mut labels, dual_name) = base_type(type_id)?;
    if let Some(k) = labels_mult {
        if k == 0 {
            return Err(Error::InvalidLabels("label multiplier must be >= 1".into()));
        }
        for l in &mut labels {
            let v = *l * k;
            if v > 3 {
                return Err(Error::InvalidLabels(format!(
                    "label {v} exceeds the maximum of 3"
                )));
            }
            *l = v;
        }
    }
    let max_label = *labels.iter().max().unwrap();
    if labels.iter().any(|&l| l != 1 && l != max_label) {
        return Err(Error::InvalidLabels(
            "labels must be 1 or the lacing number".into(),
        ));
    }
    // symmetrizability: diag(r) * C symmetric
    let n = cartan.len();
    for i in 0..n {
        for j in 0..n {
            if labels[i] as i64 * cartan[i][j] != labels[j] as i64 * cartan[j][i] {
                return Err(Error::InvalidLabels(format!(
                    "diag(r)*C is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    let lacing = max_label.max(2);
    if lacing > 3 {
        return Err(Error::InvalidLabels("lacing number exceeds 3".into()));
    }
    let phi = phi_coloring(&cartan)?;
    let name = match labels_mult {
        Some(k) if k > 1 => format!("{type_id},labels={k}"),
        _ => type_id.to_string(),
    };
    let dual_name = if labels_mult.map_or(false, |k| k > 1) {
        format!("{dual_name}^[x{}]", labels_mult.unwrap())
    } else {
        dual_name.to_string()
    };
    Ok(AlgebraSpec {
        name,
        cartan,
        labels,
        lacing,
        phi,
        dual_name,
    })
}

/// Parse an algebra id of the form `C2` or `A1,labels=2`.
pub fn parse_algebra_id(id: &str) -> Result<AlgebraSpec> {
    if let Some((ty, rest)) = id.split_once(',') {
        let mult = rest
            .strip_prefix("labels=")
            .and_then(|v| v.parse::<u8>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("bad algebra id `{id}`")))?;
        build_algebra(ty.trim(), Some(mult))
    } else {
        build_algebra(id.trim(), None)
    }
}

/// The projection Pi to the dual weight lattice: divides coordinate i by
/// r_i^v when every coordinate is divisible, otherwise kills the weight.
pub fn project_weight(spec: &AlgebraSpec, lambda: &Weight) -> Projected {
    let mut out = Vec::with_capacity(lambda.len());
    for (i, &c) in lambda.iter().enumerate() {
        let d = spec.rdual(i) as i64;
        if c % d != 0 {
            return Projected::Zero;
        }
        out.push(c / d);
    }
    Projected::Weight(out)
}
