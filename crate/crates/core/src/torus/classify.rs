use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lattice::{norm_shell, Lattice};
use super::trig::{trig_kappa, trig_laplacian, Torus, TrigPoly};
use crate::arith::{ExactScalar, GaussianRational, PiScalar};
use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

/// Seed of the random combinations when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Number of random combinations tested per shell.
pub const DEFAULT_SAMPLES: usize = 64;

/// Outcome of classifying the eigenfamilies inside one norm shell.
#[derive(Clone, Debug)]
pub struct ShellClassification {
    pub q: BigRational,
    pub shell: Vec<Vec<i64>>,
    /// Maximal sets of shell vectors whose characters pairwise satisfy the
    /// conformality relation; each spans a candidate eigenfamily.
    pub spans: Vec<Vec<Vec<i64>>>,
    pub report: VerificationReport,
}

impl ShellClassification {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn fmt_key(k: &[i64]) -> String {
    let parts: Vec<String> = k.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// `μ` with `κ(f, g) = μ·f·g`, if one exists.
fn conformal_ratio(f: &TrigPoly, g: &TrigPoly) -> Result<Option<PiScalar>> {
    let kappa = trig_kappa(f, g)?;
    let prod = f * g;
    let Some((key, lead)) = prod.leading() else {
        return Ok(kappa.is_zero().then(PiScalar::zero));
    };
    let Some(mu) = kappa.coeff(key).checked_div(lead) else {
        return Ok(None);
    };
    Ok((kappa == prod.scale(&mu)).then_some(mu))
}

fn coefficient(rng: &mut ChaCha8Rng) -> PiScalar {
    let choices = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
    let (n, d) = choices[rng.gen_range(0..choices.len())];
    PiScalar::constant(GaussianRational::ratio(n, d))
}

/// Classifies eigenfamilies inside the shell `‖k‖² = q` of the dual lattice:
/// every ordered pair of characters is tested exhaustively, then `samples`
/// seeded combinations `Σ a_i e_{k_i}` (at least two terms, `a_i ∈ {±1, ±2,
/// ±½}`) are tested as single functions. Passes iff each character is a
/// `(-Πq, -Πq)`-eigenfunction, no two distinct characters are compatible, and
/// every combination fails.
pub fn classify_shell(lattice: &Lattice, q: &BigRational, seed: u64, samples: usize) -> Result<ShellClassification> {
    let torus = Torus::new(lattice.clone())?;
    classify_on(&torus, q, seed, samples)
}

pub fn classify_on(torus: &Arc<Torus>, q: &BigRational, seed: u64, samples: usize) -> Result<ShellClassification> {
    let shell = norm_shell(torus.dual(), q);
    if shell.is_empty() {
        return Err(Error::Usage(format!("no dual vector has squared norm {q}")));
    }
    let eigen = PiScalar::pi2_multiple(-q.clone());
    let chars: Vec<TrigPoly> = shell.iter().map(|k| TrigPoly::character(torus, k)).collect();
    let mut report = VerificationReport::new(format!("classify shell q={q}"));

    for (k, e) in shell.iter().zip(&chars) {
        let id = |what: &str| format!("shell/{q}/{}/{what}", fmt_key(k));
        let lap = trig_laplacian(e);
        report.push(Check::equal(id("laplacian"), &e.scale(&eigen), &lap));
        let mu = conformal_ratio(e, e)?;
        let shown = mu.as_ref().map_or_else(|| "none".to_string(), ToString::to_string);
        report.push(Check::new(id("kappa"), &eigen, shown, mu.as_ref() == Some(&eigen)));
    }

    let n = shell.len();
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        compatible[i][i] = true;
        for j in i + 1..n {
            let ok = conformal_ratio(&chars[i], &chars[j])?.as_ref() == Some(&eigen);
            compatible[i][j] = ok;
            compatible[j][i] = ok;
            report.push(Check::new(
                format!("shell/{q}/pair/{}/{}", fmt_key(&shell[i]), fmt_key(&shell[j])),
                "rejected",
                if ok { "compatible" } else { "rejected" },
                !ok,
            ));
        }
    }

    let spans = maximal_cliques(&compatible).into_iter().map(|c| c.into_iter().map(|i| shell[i].clone()).collect()).collect();

    if n >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in 0..samples {
            let size = rng.gen_range(2..=n.min(4));
            let picks = sample(&mut rng, n, size).into_vec();
            let f = picks.iter().fold(TrigPoly::zero(torus), |acc, &i| &acc + &chars[i].scale(&coefficient(&mut rng)));
            let mu = conformal_ratio(&f, &f)?;
            let pass = mu.is_none();
            report.push(Check::new(
                format!("shell/{q}/combo/{s}"),
                format!("{f} rejected"),
                mu.map_or_else(|| "rejected".to_string(), |m| format!("eigen with mu={m}")),
                pass,
            ));
        }
    }
    Ok(ShellClassification { q: q.clone(), shell, spans, report })
}

/// Maximal cliques of a symmetric compatibility relation (Bron-Kerbosch).
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn expand(adj: &[Vec<bool>], r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        while let Some(v) = p.pop() {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&u| adj[v][u] && adj[u][v]).collect();
            let x2 = x.iter().copied().filter(|&u| adj[v][u] && adj[u][v]).collect();
            expand(adj, r2, p2, x2, out);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(adj, Vec::new(), (0..adj.len()).rev().collect(), Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

/// Smallest nonzero squared norm of the dual lattice.
pub fn smallest_nonzero_shell(lattice: &Lattice) -> Result<BigRational> {
    let torus = Torus::new(lattice.clone())?;
    let dual = torus.dual();
    // the norm of a dual basis vector bounds the minimum from above
    let bound = (0..dual.rank())
        .map(|i| {
            let mut e = vec![0; dual.rank()];
            e[i] = 1;
            dual.norm_squared(&e)
        })
        .min()
        .expect("rank is positive");
    let spectrum = super::lattice::spectrum_up_to(lattice, &bound)?;
    Ok(spectrum.into_iter().map(|s| s.q).find(|q| !num_traits::Zero::is_zero(q)).expect("bound is realized"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn z2_unit_shell() {
        let c = classify_shell(&Lattice::standard(2), &qi(1), DEFAULT_SEED, 32).unwrap();
        assert!(c.passed(), "{}", c.report);
        assert_eq!(c.spans.len(), 4);
        assert!(c.spans.iter().all(|s| s.len() == 1));
        assert_eq!(c.report.checks.iter().filter(|x| x.id.contains("/pair/")).count(), 6);
    }

    #[test]
    fn zero_shell_is_the_constants() {
        let c = classify_shell(&Lattice::standard(2), &qi(0), DEFAULT_SEED, 8).unwrap();
        assert!(c.passed());
        assert_eq!(c.spans, vec![vec![vec![0, 0]]]);
    }

    #[test]
    fn z1_unit_shell() {
        let c = classify_shell(&Lattice::standard(1), &qi(1), DEFAULT_SEED, 16).unwrap();
        assert!(c.passed(), "{}", c.report);
        assert_eq!(c.spans, vec![vec![vec![-1]], vec![vec![1]]]);
    }

    #[test]
    fn empty_shell_rejected() {
        assert!(classify_shell(&Lattice::standard(2), &qi(3), DEFAULT_SEED, 8).is_err());
    }

    #[test]
    fn cliques() {
        let adj = vec![vec![true, true, false], vec![true, true, false], vec![false, false, true]];
        assert_eq!(maximal_cliques(&adj), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn skew_minimum() {
        let skew: Lattice = "1,0;1/2,1".parse().unwrap();
        assert_eq!(smallest_nonzero_shell(&skew).unwrap(), qi(1));
        assert_eq!(smallest_nonzero_shell(&Lattice::standard(3)).unwrap(), qi(1));
    }
}
