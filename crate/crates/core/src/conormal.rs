//! Conormal varieties of complete intersections and Lê-Vogel numbers.
//!
//! The cotangent frame is `(z_1, ..., z_N, w_1, ..., w_N)`. The conormal of
//! `X = V(g_1, ..., g_c)` is cut out by `g`, the `(c+1)`-minors of the
//! Jacobian stacked over the covector row, saturated by the singular locus.
//! The Lê-Vogel induction runs upstairs against `im d f`, after translating
//! the point `(0, d_0 f)` to the origin. Every cycle involved lies on the
//! graph `im d f` or is cut by the `z`-slices to points, so intersection
//! numbers are computed upstairs without eliminating the `w`-block.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, saturate, Ideal, MonomialOrder};
use crate::lecycles::{
    chain_failure, collect_numbers, reject_improper, search_frames, CoordinateFrame, FrameChoice,
    GammaChain, Induction, LeNumbers, Mode,
};
use crate::polyparse::{LinearChange, Polynomial, Rational, VariableFrame};

/// A complete-intersection germ `(X, 0)` of dimension `d`.
#[derive(Clone, Debug)]
pub struct VarietyGerm {
    pub frame: Arc<VariableFrame>,
    /// `g_1, ..., g_c`; empty for the whole space
    pub generators: Vec<Polynomial>,
    pub ideal: Ideal,
    pub d: usize,
}

impl VarietyGerm {
    /// `V(generators)` with expected dimension `N - c`; zero generators are
    /// dropped. Checks that `0 ∈ X`, that the ideal is proper and that `X`
    /// has dimension `N - c` both globally and at the origin.
    pub fn new(frame: &Arc<VariableFrame>, generators: Vec<Polynomial>) -> Result<Self> {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if g.frame() != frame {
                return Err(Error::FrameMismatch);
            }
        }
        let n = frame.len();
        let c = generators.len();
        if c > n {
            return Err(Error::NotCompleteIntersection {
                codim: c,
                detail: format!("{c} equations in {n} variables"),
            });
        }
        let d = n - c;
        let ideal = if c == 0 {
            Ideal::zero(frame)
        } else {
            Ideal::new(frame, generators.clone())?
        };
        if generators.iter().any(|g| !g.constant_term().is_zero()) {
            return Err(Error::NotCompleteIntersection {
                codim: c,
                detail: "origin is not on X".into(),
            });
        }
        let global = ideal.krull_dimension();
        let local = ideal.local_dimension();
        if global != d as i64 || local != d as i64 {
            return Err(Error::NotCompleteIntersection {
                codim: c,
                detail: format!("dimension {global} (at the origin {local}), expected {d}"),
            });
        }
        Ok(VarietyGerm {
            frame: frame.clone(),
            generators,
            ideal,
            d,
        })
    }

    /// The whole space `C^N`.
    pub fn ambient(frame: &Arc<VariableFrame>) -> Self {
        VarietyGerm {
            frame: frame.clone(),
            generators: Vec::new(),
            ideal: Ideal::zero(frame),
            d: frame.len(),
        }
    }

    pub fn codim(&self) -> usize {
        self.generators.len()
    }

    /// The germ in the coordinates of `frame` (equations `g ∘ L`).
    pub fn in_frame(&self, frame: &CoordinateFrame) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| frame.apply(g))
            .collect::<Result<Vec<_>>>()?;
        let ideal = if gens.is_empty() {
            Ideal::zero(&self.frame)
        } else {
            Ideal::new(&self.frame, gens.clone())?
        };
        Ok(VarietyGerm {
            frame: self.frame.clone(),
            generators: gens,
            ideal,
            d: self.d,
        })
    }
}

/// `(z_1, ..., z_N, w_1, ..., w_N)` with fresh covector names.
pub fn cotangent_frame(frame: &Arc<VariableFrame>) -> Arc<VariableFrame> {
    let names: Vec<String> = (1..=frame.len()).map(|i| format!("w{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    frame.extended(&refs)
}

#[derive(Clone, Debug)]
pub struct ConormalData {
    pub cotangent_frame: Arc<VariableFrame>,
    pub ideal: Ideal,
    pub source: VarietyGerm,
}

impl ConormalData {
    pub fn n(&self) -> usize {
        self.source.frame.len()
    }

    /// Image of the conormal under the projection forgetting `w`.
    pub fn projected_ideal(&self) -> Result<Ideal> {
        let n = self.n();
        let base = eliminate(&self.ideal, &(n..2 * n).collect::<Vec<_>>())?;
        // the restricted frame has the base names in the base order
        base.map_generators(&self.source.frame, |g| g.embed(&self.source.frame))
    }
}

fn lift(p: &Polynomial, big: &Arc<VariableFrame>) -> Polynomial {
    p.embed(big)
        .expect("base frame is a prefix of the cotangent frame")
}

fn polynomial_determinant(m: &[Vec<Polynomial>], frame: &Arc<VariableFrame>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(frame),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(frame);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &polynomial_determinant(&minor, frame);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

fn column_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// All maximal minors of an `r × N` matrix.
fn maximal_minors(rows: &[Vec<Polynomial>], frame: &Arc<VariableFrame>) -> Vec<Polynomial> {
    let n = rows.first().map_or(0, Vec::len);
    column_subsets(n, rows.len())
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            polynomial_determinant(&sub, frame)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// Closure of the conormal of the regular part of `X`.
pub fn conormal_variety(x: &VarietyGerm) -> Result<ConormalData> {
    let n = x.frame.len();
    let big = cotangent_frame(&x.frame);
    let w: Vec<Polynomial> = (n..2 * n).map(|i| Polynomial::var(&big, i)).collect();
    if x.codim() == 0 {
        let ideal = Ideal::new(&big, w)?.canonical(MonomialOrder::DegRevLex);
        return Ok(ConormalData {
            cotangent_frame: big,
            ideal,
            source: x.clone(),
        });
    }

    let gens: Vec<Polynomial> = x.generators.iter().map(|g| lift(g, &big)).collect();
    let jac: Vec<Vec<Polynomial>> = x
        .generators
        .iter()
        .map(|g| g.gradient().iter().map(|p| lift(p, &big)).collect())
        .collect();

    let mut stacked = jac.clone();
    stacked.push(w);
    let mut conormal_gens = gens.clone();
    conormal_gens.extend(maximal_minors(&stacked, &big));
    let candidate = Ideal::new(&big, conormal_gens)?;

    let mut singular_gens = gens;
    singular_gens.extend(maximal_minors(&jac, &big));
    let singular = Ideal::new(&big, singular_gens)?;

    let ideal = saturate(&candidate, &singular)?.canonical(MonomialOrder::DegRevLex);
    let dim = ideal.krull_dimension();
    if dim != n as i64 {
        return Err(Error::Conormal(format!(
            "conormal has dimension {dim}, expected {n}"
        )));
    }
    Ok(ConormalData {
        cotangent_frame: big,
        ideal,
        source: x.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct DifferentialImage {
    /// `w_i - ∂f/∂z_i`
    pub generators: Vec<Polynomial>,
    pub ideal: Ideal,
}

/// `im d f = V(w_1 - ∂f/∂z_1, ..., w_N - ∂f/∂z_N)`.
pub fn image_of_differential(
    f: &Polynomial,
    cotangent_frame: &Arc<VariableFrame>,
) -> Result<DifferentialImage> {
    let n = f.nvars();
    if cotangent_frame.len() != 2 * n {
        return Err(Error::Frame(format!(
            "cotangent frame of {} variables for N = {n}",
            cotangent_frame.len()
        )));
    }
    let generators: Vec<Polynomial> = f
        .gradient()
        .iter()
        .enumerate()
        .map(|(i, p)| Ok(&Polynomial::var(cotangent_frame, n + i) - &p.embed(cotangent_frame)?))
        .collect::<Result<_>>()?;
    let ideal = Ideal::new(cotangent_frame, generators.clone())?;
    Ok(DifferentialImage { generators, ideal })
}

/// Conormal and differential image in the given coordinates, translated so
/// that `(0, d_0 f)` is the origin of the cotangent frame.
struct CotangentSetup {
    frame: Arc<VariableFrame>,
    n: usize,
    conormal: Ideal,
    image: DifferentialImage,
}

fn cotangent_setup(
    x: &VarietyGerm,
    f: &Polynomial,
    frame: &CoordinateFrame,
) -> Result<CotangentSetup> {
    if f.frame() != &x.frame {
        return Err(Error::FrameMismatch);
    }
    let n = x.frame.len();
    let xl = x.in_frame(frame)?;
    let fl = frame.apply(f)?;
    let conormal = conormal_variety(&xl)?;
    let big = conormal.cotangent_frame.clone();

    let mut shift: Vec<Rational> = vec![Rational::zero(); n];
    shift.extend(fl.gradient().iter().map(Polynomial::constant_term));
    let moved: Vec<Polynomial> = conormal
        .ideal
        .generators()
        .iter()
        .map(|g| g.translate(&shift))
        .collect();
    let conormal = Ideal::new(&big, moved)?.canonical(MonomialOrder::DegRevLex);

    let image = image_of_differential(&fl, &big)?;
    let generators: Vec<Polynomial> = image
        .generators
        .iter()
        .map(|g| g.translate(&shift))
        .collect();
    let image = DifferentialImage {
        ideal: Ideal::new(&big, generators.clone())?,
        generators,
    };
    Ok(CotangentSetup {
        frame: big,
        n,
        conormal,
        image,
    })
}

/// Lê-Vogel numbers of `f` on `X` at 0 in the given coordinates.
pub fn le_vogel_numbers(
    x: &VarietyGerm,
    f: &Polynomial,
    frame: &CoordinateFrame,
) -> Result<(LeNumbers, GammaChain)> {
    let setup = cotangent_setup(x, f, frame)?;
    let s = setup.conormal.sum(&setup.image.ideal)?.local_dimension();
    let chain = Induction {
        frame: &setup.frame,
        n: setup.n,
        top: setup.conormal.clone(),
        split: setup.image.ideal.clone(),
        cuts: setup.image.generators.clone(),
        cross_check: true,
        purify_polar: true,
    }
    .run()?;
    if !chain.passed() {
        return Err(chain_failure(&chain));
    }
    let lambda = collect_numbers(&chain, s)?;
    Ok((
        LeNumbers {
            s,
            lambda,
            frame: frame.clone(),
            mode: Mode::Levogel,
        },
        chain,
    ))
}

/// Lê-Vogel numbers in the first frame of the seeded search that passes
/// every check.
pub fn le_vogel_numbers_auto(
    x: &VarietyGerm,
    f: &Polynomial,
    seed: u64,
    budget: usize,
) -> Result<(LeNumbers, GammaChain)> {
    search_frames(&x.frame, seed, budget, |cf| {
        reject_improper(le_vogel_numbers(x, f, cf))
    })
}

/// Lê-Vogel numbers with the frame given or searched for.
pub fn le_vogel(
    x: &VarietyGerm,
    f: &Polynomial,
    choice: &FrameChoice,
) -> Result<(LeNumbers, GammaChain)> {
    match choice {
        FrameChoice::Given(frame) => le_vogel_numbers(x, f, frame),
        FrameChoice::Search { seed, budget } => le_vogel_numbers_auto(x, f, *seed, *budget),
    }
}

/// `(conormal · im d f)` at `(0, d_0 f)`, for an isolated intersection.
pub fn isolated_intersection_number(x: &VarietyGerm, f: &Polynomial) -> Result<u64> {
    let setup = cotangent_setup(x, f, &CoordinateFrame::identity(&x.frame))?;
    let meet = setup.conormal.sum(&setup.image.ideal)?;
    if meet.local_dimension() > 0 {
        return Err(Error::NotIsolatedAtOrigin {
            what: "conormal ∩ im df; use the Lê-Vogel numbers".into(),
        });
    }
    meet.local_colength()
}

/// `diag(L, L^{-T})` on the cotangent frame: the substitution under which
/// conormals of `X` turn into conormals of `V(g ∘ L)`.
pub fn cotangent_change(
    change: &LinearChange,
    cotangent_frame: &Arc<VariableFrame>,
) -> Result<LinearChange> {
    let n = change.matrix().len();
    let inv_t = change.inverse().transpose();
    let mut m = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = change.matrix()[i][j].clone();
            m[n + i][n + j] = inv_t.matrix()[i][j].clone();
        }
    }
    LinearChange::new(cotangent_frame, m)
}
