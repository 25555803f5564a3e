//! Named families of finite semigroups.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Cyclic(usize),
    SemilatticeChain(usize),
    LeftZero(usize),
    FullTransformation(usize),
    BrandtB2,
    Monogenic { index: usize, period: usize },
    UpperTriangularF2(usize),
    Null(usize),
    /// Rectangular group I × Z_g × Λ with the all-identity sandwich matrix.
    Rees { group: usize, rows: usize, cols: usize },
    /// {e, f, a, 0}: ea = a = af, e² = e, f² = f, every other product 0.
    AmpleA2,
    DirectProduct(Box<Preset>, Box<Preset>),
}

impl Preset {
    pub fn build(&self) -> FiniteSemigroup {
        match self {
            Preset::Cyclic(n) => named(*n, |i, j| (i + j) % n, |i| i.to_string()),
            Preset::SemilatticeChain(n) => named(*n, |i, j| i.min(j), |i| i.to_string()),
            Preset::LeftZero(n) => named(*n, |i, _| i, |i| format!("l{i}")),
            Preset::Null(n) => named(*n, |_, _| 0, |i| if i == 0 { "0".into() } else { format!("x{i}") }),
            Preset::FullTransformation(n) => full_transformation(*n),
            Preset::BrandtB2 => brandt_b2(),
            Preset::Monogenic { index, period } => monogenic(*index, *period),
            Preset::UpperTriangularF2(n) => upper_triangular(*n),
            Preset::Rees { group, rows, cols } => rees(*group, *rows, *cols),
            Preset::AmpleA2 => {
                let names = ["e", "f", "a", "0"];
                named(
                    4,
                    |i, j| match (i, j) {
                        (0, 0) => 0,
                        (1, 1) => 1,
                        (0, 2) | (2, 1) => 2,
                        _ => 3,
                    },
                    |i| names[i].to_string(),
                )
            }
            Preset::DirectProduct(a, b) => a.build().direct_product(&b.build()),
        }
    }
}

fn named(n: usize, f: impl Fn(usize, usize) -> usize, name: impl Fn(usize) -> String) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, f)
        .and_then(|s| s.with_names((0..n).map(name).collect()))
        .expect("preset tables are associative")
}

/// Maps on {0..n-1} composed as (x·y)(p) = x(y(p)), indexed lexicographically
/// by their image tuples.
fn full_transformation(n: usize) -> FiniteSemigroup {
    let order = n.pow(n as u32);
    let decode = |mut k: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * n + x);
    named(
        order,
        |i, j| {
            let (x, y) = (decode(i), decode(j));
            encode(&(0..n).map(|p| x[y[p]]).collect::<Vec<_>>())
        },
        |i| decode(i).iter().map(|d| d.to_string()).collect(),
    )
}

fn brandt_b2() -> FiniteSemigroup {
    // e11, e12, e21, e22, 0
    let idx = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let names = ["e11", "e12", "e21", "e22", "0"];
    named(
        5,
        |a, b| {
            if a == 4 || b == 4 {
                return 4;
            }
            let ((i, j), (k, l)) = (idx[a], idx[b]);
            if j == k {
                idx.iter().position(|&p| p == (i, l)).unwrap()
            } else {
                4
            }
        },
        |i| names[i].to_string(),
    )
}

/// ⟨a | a^{index+period} = a^index⟩ with elements a, a², …, a^{index+period-1}.
fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
    let m = index + period - 1;
    let reduce = |mut k: usize| {
        while k > m {
            k -= period;
        }
        k
    };
    named(m, |i, j| reduce(i + j + 2) - 1, |i| if i == 0 { "a".into() } else { format!("a^{}", i + 1) })
}

fn upper_triangular(n: usize) -> FiniteSemigroup {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let order = 1usize << cells.len();
    let to_matrix = |k: usize| {
        let mut m = vec![vec![0u8; n]; n];
        for (b, &(i, j)) in cells.iter().enumerate() {
            m[i][j] = ((k >> b) & 1) as u8;
        }
        m
    };
    let from_matrix = |m: &[Vec<u8>]| cells.iter().enumerate().map(|(b, &(i, j))| (m[i][j] as usize) << b).sum();
    named(
        order,
        |a, b| {
            let (x, y) = (to_matrix(a), to_matrix(b));
            let prod: Vec<Vec<u8>> = (0..n)
                .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| acc ^ (x[i][k] & y[k][j]))).collect())
                .collect();
            from_matrix(&prod)
        },
        |k| {
            to_matrix(k)
                .iter()
                .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
                .collect::<Vec<_>>()
                .join("/")
        },
    )
}

fn rees(g: usize, rows: usize, cols: usize) -> FiniteSemigroup {
    let enc = |i: usize, x: usize, l: usize| (i * g + x) * cols + l;
    let dec = |k: usize| (k / (g * cols), (k / cols) % g, k % cols);
    named(
        rows * g * cols,
        |a, b| {
            let ((i, x, _), (_, y, l)) = (dec(a), dec(b));
            enc(i, (x + y) % g, l)
        },
        |k| {
            let (i, x, l) = dec(k);
            format!("({i},{x},{l})")
        },
    )
}

fn one_param(name: &str, params: &str) -> Result<usize, PresetError> {
    let n: usize = params.trim().parse().map_err(|_| PresetError::BadParams {
        name: name.into(),
        reason: format!("expected a positive integer, got `{params}`"),
    })?;
    if n == 0 {
        return Err(PresetError::BadParams { name: name.into(), reason: "must be positive".into() });
    }
    Ok(n)
}

fn int_list(name: &str, params: &str, len: usize) -> Result<Vec<usize>, PresetError> {
    let v: Vec<usize> = params
        .split(',')
        .map(|p| one_param(name, p))
        .collect::<Result<_, _>>()?;
    if v.len() != len {
        return Err(PresetError::BadParams { name: name.into(), reason: format!("expected {len} integers") });
    }
    Ok(v)
}

impl FromStr for Preset {
    type Err = PresetError;

    /// `NAME[:params]`, e.g. `cyclic:3`, `monogenic:2,2`, `rees:2,1,2`,
    /// `direct-product:semilattice-chain:2*cyclic:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (s.trim(), None),
        };
        let need = || {
            params.ok_or_else(|| PresetError::BadParams { name: name.into(), reason: "parameters required".into() })
        };
        let too_big = |n: usize, max: usize| -> Result<usize, PresetError> {
            if n > max {
                Err(PresetError::BadParams { name: name.into(), reason: format!("at most {max}") })
            } else {
                Ok(n)
            }
        };
        Ok(match name {
            "cyclic" => Preset::Cyclic(one_param(name, need()?)?),
            "semilattice-chain" => Preset::SemilatticeChain(one_param(name, need()?)?),
            "left-zero" => Preset::LeftZero(one_param(name, need()?)?),
            "null" => Preset::Null(one_param(name, need()?)?),
            "full-transformation" => Preset::FullTransformation(too_big(one_param(name, need()?)?, 4)?),
            "brandt-B2" => Preset::BrandtB2,
            "ample-a2" => Preset::AmpleA2,
            "monogenic" => {
                let v = int_list(name, need()?, 2)?;
                Preset::Monogenic { index: v[0], period: v[1] }
            }
            "upper-triangular-F2" => {
                let n = params.map(|p| one_param(name, p)).transpose()?.unwrap_or(2);
                Preset::UpperTriangularF2(too_big(n, 3)?)
            }
            "rees" => {
                let v = int_list(name, need()?, 3)?;
                Preset::Rees { group: v[0], rows: v[1], cols: v[2] }
            }
            "direct-product" => {
                let (a, b) = need()?.split_once('*').ok_or_else(|| PresetError::BadParams {
                    name: name.into(),
                    reason: "expected `A*B`".into(),
                })?;
                Preset::DirectProduct(Box::new(a.parse()?), Box::new(b.parse()?))
            }
            other => return Err(PresetError::Unknown(other.into())),
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic(n) => write!(f, "cyclic:{n}"),
            Preset::SemilatticeChain(n) => write!(f, "semilattice-chain:{n}"),
            Preset::LeftZero(n) => write!(f, "left-zero:{n}"),
            Preset::Null(n) => write!(f, "null:{n}"),
            Preset::FullTransformation(n) => write!(f, "full-transformation:{n}"),
            Preset::BrandtB2 => write!(f, "brandt-B2"),
            Preset::AmpleA2 => write!(f, "ample-a2"),
            Preset::Monogenic { index, period } => write!(f, "monogenic:{index},{period}"),
            Preset::UpperTriangularF2(n) => write!(f, "upper-triangular-F2:{n}"),
            Preset::Rees { group, rows, cols } => write!(f, "rees:{group},{rows},{cols}"),
            Preset::DirectProduct(a, b) => write!(f, "direct-product:{a}*{b}"),
        }
    }
}
