use super::{mode_blocks, respects_blocks, ConstraintMode};
use crate::linalg::{add_vec, is_zero_vec, solve_matrix, CoordinateMap, MatrixQ, Rational, VecQ};
use crate::roots::{fmt_covector, RootDatum};
use crate::{Error, Result};

/// Outcome of checking one E-identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EReport {
    pub holds: bool,
    pub cases: usize,
    /// Basis indices `(x, y, z)` inside `g_gamma`, `g_gamma`, `g_delta` of the first failure.
    pub witness: Option<(usize, usize, usize)>,
}

/// `d` acting on an ambient vector of `n`.
fn apply(rd: &RootDatum, d: &MatrixQ, x: &[Rational]) -> VecQ {
    let nil = rd.nilpotent();
    let c = nil.coords(x).expect("vector lies in n");
    nil.embed(&d.mul_vec(&c))
}

/// `D[[X, theta Y], Z] = [[DX, theta Y], Z] + [[X, theta DY], Z] + [[X, theta Y], DZ]`
/// for basis vectors `X, Y` of `g_gamma` and `Z` of `g_delta`.
pub fn check_e_identity(
    rd: &RootDatum,
    d: &MatrixQ,
    gamma: &[Rational],
    delta: &[Rational],
) -> Result<EReport> {
    let i = rd
        .positive_index(gamma)
        .ok_or_else(|| Error::NotARoot(fmt_covector(gamma)))?;
    let j = rd
        .positive_index(delta)
        .ok_or_else(|| Error::NotARoot(fmt_covector(delta)))?;
    let nil = rd.nilpotent();
    if d.rows() != nil.dim() || d.cols() != nil.dim() {
        return Err(Error::Shape(format!(
            "derivation must be {0}x{0}",
            nil.dim()
        )));
    }
    let g = rd.algebra();
    let br = |a: &[Rational], b: &[Rational]| g.bracket_coords(a, b);
    let th = |a: &[Rational]| g.theta_coords(a);
    let xs = rd.positive_space(i).vectors();
    let zs = rd.positive_space(j).vectors();
    let dx: Vec<VecQ> = xs.iter().map(|x| apply(rd, d, x)).collect();
    let dz: Vec<VecQ> = zs.iter().map(|z| apply(rd, d, z)).collect();
    let mut cases = 0;
    for (a, x) in xs.iter().enumerate() {
        for (b, y) in xs.iter().enumerate() {
            let w = br(x, &th(y));
            let w1 = br(&dx[a], &th(y));
            let w2 = br(x, &th(&dx[b]));
            for (c, z) in zs.iter().enumerate() {
                cases += 1;
                let lhs = apply(rd, d, &br(&w, z));
                let rhs = add_vec(&add_vec(&br(&w1, z), &br(&w2, z)), &br(&w, &dz[c]));
                if lhs != rhs {
                    return Ok(EReport {
                        holds: false,
                        cases,
                        witness: Some((a, b, c)),
                    });
                }
            }
        }
    }
    Ok(EReport {
        holds: true,
        cases,
        witness: None,
    })
}

/// A skew derivation of `n` extended to `g_0` and then to all of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// The map on `g_0`, in the coordinates of the basis of the zero space.
    pub d_tilde: MatrixQ,
    /// The extension as an endomorphism of `g`, in the basis of `g`.
    pub on_g: MatrixQ,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentExtension(msg.into())
}

pub fn build_extension(rd: &RootDatum, d: &MatrixQ) -> Result<Extension> {
    let nil = rd.nilpotent();
    let g = rd.algebra();
    let n = nil.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Shape(format!("derivation must be {n}x{n}")));
    }
    if !nil.structure().is_derivation(d) {
        return Err(Error::NotADerivation("input to extension".into()));
    }
    if nil.transpose(d) != -d {
        return Err(Error::NotSymmetric(
            "expected a skew-symmetric derivation".into(),
        ));
    }
    if !respects_blocks(d, &mode_blocks(nil, ConstraintMode::Grading)) {
        return Err(Error::NotADerivation(
            "derivation does not preserve heights".into(),
        ));
    }
    let simple = rd.simple().to_vec();
    for &i in &simple {
        for &j in &simple {
            let rep = check_e_identity(rd, d, &rd.positive()[i], &rd.positive()[j])?;
            if !rep.holds {
                return Err(Error::EIdentityFails(i, j));
            }
        }
    }

    let th = |a: &[Rational]| g.theta_coords(a);
    for &i in &simple {
        for &j in &simple {
            if i == j {
                continue;
            }
            for x in rd.positive_space(i).vectors() {
                for y in rd.positive_space(j).vectors() {
                    let s = add_vec(
                        &g.bracket_coords(&apply(rd, d, x), &th(y)),
                        &g.bracket_coords(x, &th(&apply(rd, d, y))),
                    );
                    if !is_zero_vec(&s) {
                        return Err(inconsistent(
                            "[DX, theta Y] + [X, theta DY] is nonzero across simple roots",
                        ));
                    }
                }
            }
        }
    }

    let zero = rd.zero_space();
    let zmap = CoordinateMap::new(zero);
    let g1: Vec<VecQ> = simple
        .iter()
        .flat_map(|&i| rd.positive_space(i).vectors().iter().cloned())
        .collect();
    let (mut gens, mut images) = (Vec::new(), Vec::new());
    for x in &g1 {
        let dx = apply(rd, d, x);
        for y in &g1 {
            let dy = apply(rd, d, y);
            let w = g.bracket_coords(x, &th(y));
            let dw = add_vec(
                &g.bracket_coords(&dx, &th(y)),
                &g.bracket_coords(x, &th(&dy)),
            );
            gens.push(
                zmap.coords(&w)
                    .ok_or_else(|| inconsistent("[X, theta Y] is not in g_0"))?,
            );
            images.push(
                zmap.coords(&dw)
                    .ok_or_else(|| inconsistent("image is not in g_0"))?,
            );
        }
    }
    let k = zero.dim();
    let gm = MatrixQ::from_columns(&gens, k);
    if gm.rank() != k {
        return Err(inconsistent(
            "brackets [X, theta Y] over simple root spaces do not span g_0",
        ));
    }
    let rm = MatrixQ::from_columns(&images, k);
    let d_tilde = solve_matrix(&gm.transpose(), &rm.transpose())
        .ok_or_else(|| inconsistent("no linear map on g_0 matches the generators"))?
        .transpose();
    for c in d_tilde.columns() {
        if !rd.m_basis().contains(&zmap.vector(&c)) {
            return Err(inconsistent("range of the map on g_0 leaves m"));
        }
    }

    // adapted basis: n, then g_0, then theta(n)
    let mut adapted: Vec<VecQ> = nil.embedding().vectors().to_vec();
    adapted.extend(zero.vectors().iter().cloned());
    adapted.extend(nil.embedding().vectors().iter().map(|v| th(v)));
    let dim = g.dim();
    let p = MatrixQ::from_columns(&adapted, dim);
    let p_inv = p
        .inverse()
        .ok_or_else(|| inconsistent("n + g_0 + theta(n) is not all of g"))?;
    let mut block = MatrixQ::zeros(dim, dim);
    block.set_block(0, 0, d);
    block.set_block(n, n, &d_tilde);
    block.set_block(n + k, n + k, d);
    let on_g = &(&p * &block) * &p_inv;
    if let Some((a, b)) = g.structure().derivation_failure(&on_g) {
        return Err(inconsistent(format!(
            "extension is not a derivation of g at basis pair ({a}, {b})"
        )));
    }
    if &(g.theta() * &on_g) * g.theta() != on_g {
        return Err(inconsistent("extension does not commute with theta"));
    }
    Ok(Extension { d_tilde, on_g })
}
