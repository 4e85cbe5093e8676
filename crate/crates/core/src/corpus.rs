//! Built-in groups: the classical examples of isospectral and length-isospectral flat manifolds.
//!
//! Unless stated otherwise the lattice is `Z^n` with the identity Gram matrix.
//! Tables in column notation are transcribed with every listed element as a
//! generator, so closure re-checks each product against the transcription.

use crate::bieberbach::AffineElement;
use crate::error::{Error, Result};
use crate::exact::rational::{int, rat};
use crate::exact::{IntMatrix, Rational};
use crate::group_file::GroupDefinition;

/// Diagonal point part with entries `signs` and translation `1/2` on the 1-based coordinates `halves`.
fn diag(signs: &[i64], halves: &[usize]) -> AffineElement {
    let mut t = vec![int(0); signs.len()];
    for &h in halves {
        t[h - 1] = rat(1, 2);
    }
    AffineElement::new(IntMatrix::diagonal(signs), t)
}

fn def(name: &str, description: &str, n: usize, generators: Vec<AffineElement>) -> GroupDefinition {
    GroupDefinition {
        name: name.to_string(),
        dimension: n,
        gram: None,
        generators,
        description: Some(description.to_string()),
    }
}

/// Block diagonal point part from 2x2 and 1x1 blocks.
fn blocks(parts: &[Block]) -> IntMatrix {
    let n: usize = parts.iter().map(|b| b.size()).sum();
    let mut m = IntMatrix::zeros(n, n);
    let mut at = 0;
    for b in parts {
        match b {
            Block::One(s) => m[(at, at)] = *s,
            Block::Two(q) => {
                for r in 0..2 {
                    for c in 0..2 {
                        m[(at + r, at + c)] = q[r][c];
                    }
                }
            }
        }
        at += b.size();
    }
    m
}

enum Block {
    One(i64),
    Two([[i64; 2]; 2]),
}

impl Block {
    fn size(&self) -> usize {
        match self {
            Block::One(_) => 1,
            Block::Two(_) => 2,
        }
    }
}

const J: Block = Block::Two([[0, 1], [-1, 0]]);
const MJ: Block = Block::Two([[0, -1], [1, 0]]);
const I2: Block = Block::Two([[1, 0], [0, 1]]);
const MI2: Block = Block::Two([[-1, 0], [0, -1]]);
const P: Block = Block::One(1);
const M: Block = Block::One(-1);

fn affine(parts: &[Block], translation: &[(usize, Rational)]) -> AffineElement {
    let b = blocks(parts);
    let mut t = vec![int(0); b.rows()];
    for &(i, v) in translation {
        t[i - 1] = v;
    }
    AffineElement::new(b, t)
}

/// `C_k = diag(1^k, (-1)^(n-k))`.
fn c_k(n: usize, k: usize) -> Vec<i64> {
    (0..n).map(|i| if i < k { 1 } else { -1 }).collect()
}

/// `Γ^n_{k,j} = <C_k L_{(e_1 + ... + e_j)/2}, Z^n>` for `1 <= j <= k < n`.
pub fn gamma_n_k_j(n: usize, k: usize, j: usize) -> Result<GroupDefinition> {
    if !(1 <= j && j <= k && k < n) {
        return Err(Error::InvalidArgument(format!(
            "gamma_n_k_j needs 1 <= j <= k < n, got n={n}, k={k}, j={j}"
        )));
    }
    let halves: Vec<usize> = (1..=j).collect();
    Ok(def(
        &format!("gamma_{n}_{k}_{j}"),
        &format!("<C_k L_(e_1+...+e_j)/2> with n={n}, k={k}, j={j}"),
        n,
        vec![diag(&c_k(n, k), &halves)],
    ))
}

/// `Γ^n_k = <C_k L_{e_1/2}, Z^n>`.
pub fn gamma_n_k(n: usize, k: usize) -> Result<GroupDefinition> {
    let mut g = gamma_n_k_j(n, k, 1)?;
    g.name = format!("gamma_{n}_{k}");
    g.description = Some(format!("<C_k L_e_1/2> with n={n}, k={k}"));
    Ok(g)
}

/// Half-translation marks of a 13-dimensional column cell: left is Γ′, right is Γ.
#[derive(Clone, Copy)]
enum Half {
    No,
    Left,
    Right,
    Both,
}

/// Rows of the 13-dimensional `Z_2^3` table; columns are
/// `B1, B2, B3, B1B2, B1B3, B2B3, B1B2B3`.
fn ex35_rows() -> Vec<[(i64, Half); 7]> {
    use Half::*;
    let plus = |h: [Half; 7]| -> [(i64, Half); 7] { h.map(|x| (1, x)) };
    let signs = |s: [i64; 7]| -> [(i64, Half); 7] { s.map(|x| (x, No)) };
    let r9 = plus([Left, No, Right, Left, Both, Right, Both]);
    let r11 = plus([No, Left, Right, Left, Right, Both, Both]);
    vec![
        signs([1, -1, -1, -1, -1, 1, 1]),
        signs([-1, 1, -1, -1, 1, -1, 1]),
        [(-1, Both), (-1, No), (1, No), (1, Both), (-1, Both), (-1, No), (1, Both)],
        signs([-1, -1, -1, 1, 1, 1, -1]),
        plus([Both, Left, No, Right, Both, Left, Right]),
        plus([Left, Both, No, Right, Left, Both, Right]),
        plus([Left, Both, Right, Right, Both, Left, No]),
        plus([Both, Left, Both, Right, No, Right, Left]),
        // rows 9-10 and 11-12 are listed identically in the source table
        r9,
        r9,
        r11,
        r11,
        plus([No, No, Left, No, Left, Left, Left]),
    ]
}

fn ex35(prime: bool, fourteen: bool) -> GroupDefinition {
    let mut rows = ex35_rows();
    if fourteen {
        let signs = |s: [i64; 7]| -> [(i64, Half); 7] { s.map(|x| (x, Half::No)) };
        rows.splice(
            3..4,
            [signs([-1, -1, 1, 1, -1, -1, 1]), signs([1, 1, -1, 1, -1, -1, -1])],
        );
    }
    let n = rows.len();
    let gens = (0..7)
        .map(|col| {
            let signs: Vec<i64> = rows.iter().map(|r| r[col].0).collect();
            let halves: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| match r[col].1 {
                    Half::Both => true,
                    Half::Left => prime,
                    Half::Right => !prime,
                    Half::No => false,
                })
                .map(|(i, _)| i + 1)
                .collect();
            diag(&signs, &halves)
        })
        .collect();
    let name = match (fourteen, prime) {
        (false, false) => "ex35_gamma",
        (false, true) => "ex35_gammap",
        (true, false) => "ex35x14_gamma",
        (true, true) => "ex35x14_gammap",
    };
    let desc = if fourteen {
        "Z_2^3 pair enlarged to dimension 14: [L_c]-isospectral, p-isospectral only for p = 7"
    } else {
        "Z_2^3 pair of dimension 13: [L_c]-isospectral, not p-isospectral for any p"
    };
    def(name, desc, n, gens)
}

fn build(name: &str) -> Option<GroupDefinition> {
    let q = |k: i128| rat(k, 4);
    let g = match name {
        "torus_4" => def("torus_4", "canonical torus Z^4 \\ R^4", 4, vec![]),
        "klein_bottle" => def("klein_bottle", "Klein bottle <diag(-1,1) L_e2/2>", 2, vec![diag(&[-1, 1], &[2])]),
        "ex23i_gamma" => def(
            "ex23i_gamma",
            "Z_2 quotient with B = diag(1,-1,-1,-1); 2-isospectral to ex23i_gammap",
            4,
            vec![diag(&[1, -1, -1, -1], &[1])],
        ),
        "ex23i_gammap" => def(
            "ex23i_gammap",
            "Z_2 quotient with B = diag(1,1,1,-1)",
            4,
            vec![diag(&[1, 1, 1, -1], &[1])],
        ),
        "ex23ii_gamma" => def(
            "ex23ii_gamma",
            "B = diag(1,1,-1,-1), b = e1/2",
            4,
            vec![diag(&[1, 1, -1, -1], &[1])],
        ),
        "ex23ii_gammap" => def(
            "ex23ii_gammap",
            "B = diag(1,1,-1,-1), b = (e1+e2)/2",
            4,
            vec![diag(&[1, 1, -1, -1], &[1, 2])],
        ),
        "ex23iii_gamma" => def(
            "ex23iii_gamma",
            "Z_2^2 diagonal group, orientable",
            4,
            vec![
                diag(&[1, 1, -1, -1], &[1]),
                diag(&[1, -1, -1, 1], &[4]),
                diag(&[1, -1, 1, -1], &[1, 4]),
            ],
        ),
        "ex23iii_gammap" => def(
            "ex23iii_gammap",
            "Z_4 group generated by diag(J,-1,1) L_e4/4, non-orientable",
            4,
            vec![
                affine(&[J, M, P], &[(4, q(1))]),
                affine(&[MI2, P, P], &[(4, q(2))]),
                affine(&[MJ, M, P], &[(4, q(3))]),
            ],
        ),
        "ex23iv_gamma" => def(
            "ex23iv_gamma",
            "Z_2^2 with b1 = (e1+e2+e3+e4)/2, b2 = e4/2",
            4,
            vec![diag(&[1, 1, -1, -1], &[1, 2, 3, 4]), diag(&[1, 1, -1, 1], &[4])],
        ),
        "ex23iv_gamma_variant" => def(
            "ex23iv_gamma_variant",
            "Z_2^2 with b1 = (e1+e2+e3+e4)/2, b2 = (e2+e4)/2",
            4,
            vec![diag(&[1, 1, -1, -1], &[1, 2, 3, 4]), diag(&[1, 1, -1, 1], &[2, 4])],
        ),
        "ex23iv_gammap" => def(
            "ex23iv_gammap",
            "Z_2^2 with b1 = (e1+e2)/2, b2 = e2/2",
            4,
            vec![diag(&[1, 1, -1, -1], &[1, 2]), diag(&[1, 1, -1, 1], &[2])],
        ),
        "ex33_gamma" => def(
            "ex33_gamma",
            "Z_2^2 pair: Sunada isospectral and [L_c]-isospectral",
            4,
            vec![
                diag(&[1, 1, -1, -1], &[2, 4]),
                diag(&[1, -1, 1, -1], &[3]),
                diag(&[1, -1, -1, 1], &[2, 3, 4]),
            ],
        ),
        "ex33_gammap" => def(
            "ex33_gammap",
            "Z_2^2 pair: Sunada isospectral and [L_c]-isospectral",
            4,
            vec![
                diag(&[1, 1, -1, -1], &[2]),
                diag(&[1, -1, 1, -1], &[1]),
                diag(&[1, -1, -1, 1], &[1, 2]),
            ],
        ),
        "ex34_gamma" => def(
            "ex34_gamma",
            "Z_2^2 pair: Sunada isospectral, L_c-isospectral, not [L]-isospectral",
            4,
            vec![
                diag(&[1, 1, 1, -1], &[1]),
                diag(&[1, 1, -1, 1], &[1, 2]),
                diag(&[1, 1, -1, -1], &[2]),
            ],
        ),
        "ex34_gammap" => def(
            "ex34_gammap",
            "Z_2^2 pair: Sunada isospectral, L_c-isospectral, not [L]-isospectral",
            4,
            vec![
                diag(&[1, 1, 1, -1], &[3, 4]),
                diag(&[1, 1, -1, 1], &[2, 3, 4]),
                diag(&[1, 1, -1, -1], &[2]),
            ],
        ),
        "ex35_gamma" => ex35(false, false),
        "ex35_gammap" => ex35(true, false),
        "ex35x14_gamma" => ex35(false, true),
        "ex35x14_gammap" => ex35(true, true),
        "ex36_gamma" => def(
            "ex36_gamma",
            "Z_4 x Z_2 pair: 0- and 6-isospectral, L- but not L_c-isospectral",
            6,
            vec![
                affine(&[J, J, P, P], &[(5, q(1))]),
                affine(&[MI2, MI2, P, P], &[(5, q(2))]),
                affine(&[MJ, MJ, P, P], &[(5, q(3))]),
                affine(&[MI2, I2, P, P], &[(6, q(2))]),
                affine(&[MJ, J, P, P], &[(5, q(1)), (6, q(2))]),
                affine(&[I2, MI2, P, P], &[(5, q(2)), (6, q(2))]),
                affine(&[J, MJ, P, P], &[(5, q(3)), (6, q(2))]),
            ],
        ),
        "ex36_gammap" => def(
            "ex36_gammap",
            "Z_4 x Z_2 pair: 0- and 6-isospectral, L- but not L_c-isospectral",
            6,
            vec![
                affine(&[J, P, M, M, P], &[(6, q(1))]),
                affine(&[MI2, P, P, P, P], &[(6, q(2))]),
                affine(&[MJ, P, M, M, P], &[(6, q(3))]),
                affine(&[MI2, M, P, M, P], &[(4, q(2)), (5, q(2))]),
                affine(&[MJ, M, M, P, P], &[(4, q(2)), (5, q(2)), (6, q(1))]),
                affine(&[I2, M, P, M, P], &[(4, q(2)), (5, q(2)), (6, q(2))]),
                affine(&[J, M, M, P, P], &[(4, q(2)), (5, q(2)), (6, q(3))]),
            ],
        ),
        "ex37_gamma" => def(
            "ex37_gamma",
            "Z_2^2 pair in dimension 7 with isomorphic fundamental groups, Sunada isospectral",
            7,
            vec![
                diag(&[1, 1, 1, 1, -1, -1, -1], &[1, 2, 3, 7]),
                diag(&[1, 1, -1, -1, 1, 1, -1], &[1, 2, 5]),
                diag(&[1, 1, -1, -1, -1, -1, 1], &[3, 5, 7]),
            ],
        ),
        "ex37_gammap" => def(
            "ex37_gammap",
            "Z_2^2 pair in dimension 7 with isomorphic fundamental groups, Sunada isospectral",
            7,
            vec![
                diag(&[1, 1, 1, 1, -1, -1, -1], &[1, 3, 4, 7]),
                diag(&[1, 1, -1, -1, 1, 1, -1], &[1, 5, 6]),
                diag(&[1, 1, -1, -1, -1, -1, 1], &[3, 4, 5, 6, 7]),
            ],
        ),
        "ex38_n7_k5" => {
            let mut g = gamma_n_k(7, 5).unwrap();
            g.name = name.to_string();
            g
        }
        "ex38_n7_k6" => {
            let mut g = gamma_n_k(7, 6).unwrap();
            g.name = name.to_string();
            g
        }
        "gamma_6_5_1" => gamma_n_k_j(6, 5, 1).unwrap(),
        "gamma_6_5_2" => gamma_n_k_j(6, 5, 2).unwrap(),
        "gamma_6_5_3" => gamma_n_k_j(6, 5, 3).unwrap(),
        _ => return None,
    };
    Some(g)
}

pub const NAMES: &[&str] = &[
    "torus_4",
    "klein_bottle",
    "ex23i_gamma",
    "ex23i_gammap",
    "ex23ii_gamma",
    "ex23ii_gammap",
    "ex23iii_gamma",
    "ex23iii_gammap",
    "ex23iv_gamma",
    "ex23iv_gamma_variant",
    "ex23iv_gammap",
    "ex33_gamma",
    "ex33_gammap",
    "ex34_gamma",
    "ex34_gammap",
    "ex35_gamma",
    "ex35_gammap",
    "ex35x14_gamma",
    "ex35x14_gammap",
    "ex36_gamma",
    "ex36_gammap",
    "ex37_gamma",
    "ex37_gammap",
    "ex38_n7_k5",
    "ex38_n7_k6",
    "gamma_6_5_1",
    "gamma_6_5_2",
    "gamma_6_5_3",
];

pub fn names() -> &'static [&'static str] {
    NAMES
}

/// Looks up a named entry; `gamma_N_K_J` and `gamma_N_K` are generated on demand.
pub fn get(name: &str) -> Result<GroupDefinition> {
    if let Some(g) = build(name) {
        return Ok(g);
    }
    let parts: Vec<&str> = name.split('_').collect();
    if parts.first() == Some(&"gamma") {
        let nums: Option<Vec<usize>> = parts[1..].iter().map(|p| p.parse().ok()).collect();
        match nums.as_deref() {
            Some([n, k, j]) => return gamma_n_k_j(*n, *k, *j),
            Some([n, k]) => return gamma_n_k(*n, *k),
            _ => {}
        }
    }
    Err(Error::UnknownCorpusEntry(name.to_string()))
}

/// A pair of corpus groups compared in the summary table of isospectrality properties.
#[derive(Clone, Debug)]
pub struct CorpusPair {
    pub label: &'static str,
    pub left: &'static str,
    pub right: &'static str,
    /// Recorded metadata; not computed.
    pub isomorphic_fundamental_groups: bool,
}

pub const PAIRS: &[CorpusPair] = &[
    CorpusPair { label: "ex23i", left: "ex23i_gamma", right: "ex23i_gammap", isomorphic_fundamental_groups: true },
    CorpusPair { label: "ex34", left: "ex34_gamma", right: "ex34_gammap", isomorphic_fundamental_groups: false },
    CorpusPair { label: "ex36", left: "ex36_gamma", right: "ex36_gammap", isomorphic_fundamental_groups: false },
    CorpusPair { label: "ex33", left: "ex33_gamma", right: "ex33_gammap", isomorphic_fundamental_groups: false },
    CorpusPair { label: "ex37", left: "ex37_gamma", right: "ex37_gammap", isomorphic_fundamental_groups: true },
    CorpusPair { label: "ex35", left: "ex35_gamma", right: "ex35_gammap", isomorphic_fundamental_groups: false },
    CorpusPair { label: "ex38", left: "ex38_n7_k5", right: "ex38_n7_k6", isomorphic_fundamental_groups: false },
];
