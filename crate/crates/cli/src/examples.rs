//! Scripted check bundles for the three model problems. Every check runs on a
//! fixed parameter lattice so the output is reproducible.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use clap::ValueEnum;
use krein_ext::{
    degenerate_sl, empty_resolvent_family, extension_subspace, indefinite_sl, intersection_dim,
    m_identity_residual, m_phase_candidate, zero_chardata, ApproxEqualResult, ClassificationResult,
    Classifier, EmptyResolventFamily, ExtensionClass, ExtensionParams, PhaseSet, Potential,
    ResolventProbe, SearchBox, ShootingOracle, SturmLiouvilleModel, Verdict, C64,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Degenerate Sturm-Liouville model: s+ equals s-.
    Sec51,
    /// Indefinite Sturm-Liouville model with zero potential.
    Sec52,
    /// Identically vanishing characteristic function.
    Sec53,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: krein_ext::Error) -> String {
    e.to_string()
}

/// `n` equally spaced angles in `[0, 2π)`, offset so none is special.
fn angles(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |k| (k as f64 + 0.37) * TAU / n as f64)
}

/// Lattice of extensions mixing `q = 0`, `r = 0` and interior points.
fn lattice() -> Vec<ExtensionParams> {
    let qs = [0.0, 0.15, 0.5, FRAC_1_SQRT_2, 0.9, 1.0];
    let mut out = Vec::new();
    for phi in angles(6) {
        for gamma in angles(4) {
            for xi in angles(3) {
                for q in qs {
                    let r = if q == 1.0 { 0.0 } else { (1.0 - q * q).sqrt() };
                    out.push(ExtensionParams::new(phi, gamma, xi, q, r).expect("lattice point is valid"));
                }
            }
        }
    }
    out
}

fn certificate(res: &ClassificationResult, u: &ExtensionParams) -> bool {
    let m = extension_subspace(u);
    match res.csym_matrix().and_then(|c| c.image(&m)) {
        Some(cm) => intersection_dim(&cm, &m) == 2,
        None => false,
    }
}

fn sec51() -> Vec<(&'static str, Check)> {
    let cd = degenerate_sl();
    let family = empty_resolvent_family(&cd).map_err(err);
    let members: Vec<ExtensionParams> = [0.0, 1.0, 2.0]
        .iter()
        .flat_map(|&g| [0.0, PI].map(|phi| ExtensionParams::new(phi, g, 0.0, 1.0, 0.0).unwrap()))
        .collect();
    let grid = SearchBox::new(0.5, 4.5, 0.5, 4.5).unwrap().grid(5);

    let family_check = || -> Check {
        let f = family.clone()?;
        ensure(f == EmptyResolventFamily::Family { phases: PhaseSet::Pair([0.0, PI]) }, || {
            format!("got {f:?}")
        })?;
        Ok(String::new())
    };
    let vanishing = || -> Check {
        let mut worst = 0.0_f64;
        for u in &members {
            for &mu in &grid {
                worst = worst.max(krein_ext::det_f(u, &cd, mu).map_err(err)?.norm());
            }
        }
        ensure(worst < 1e-9, || format!("max |F| = {worst:.3e}"))?;
        Ok(format!("max |F| = {worst:.1e}"))
    };
    let shooting = || -> Check {
        let oracle = ShootingOracle::new().map_err(err)?;
        let mut worst = 0.0_f64;
        for u in &members {
            for &mu in grid.iter().step_by(5) {
                worst = worst.max(oracle.residual(u, mu).map_err(err)?);
            }
        }
        ensure(worst < 1e-8, || format!("max residual = {worst:.3e}"))?;
        Ok(format!("max residual = {worst:.1e}"))
    };
    let outside = || -> Check {
        let probe = ResolventProbe::new(&cd).map_err(err)?;
        let f = family.clone()?;
        let mut n = 0;
        for u in lattice().iter().chain(&members) {
            let v = probe.verdict(u).map_err(err)?;
            ensure((v == Verdict::IdenticallyZeroDeterminant) == f.contains(u), || {
                format!("{u:?} has verdict {}", v.name())
            })?;
            n += 1;
        }
        Ok(format!("{n} extensions"))
    };
    let spectrum = || -> Check {
        let u = ExtensionParams::new(1.0, 0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let b = SearchBox::new(0.5, 25.0, 0.5, 5.0).unwrap();
        let rep = ResolventProbe::new(&cd).map_err(err)?.nonreal_eigenvalues(&u, &b).map_err(err)?;
        let reference = ShootingOracle::new().map_err(err)?.zeros(&u, &b, 0.25).map_err(err)?;
        ensure(rep.eigenvalues.len() == reference.len(), || {
            format!("{} zeros vs {} from the oracle", rep.eigenvalues.len(), reference.len())
        })?;
        ensure(rep.winding_total == rep.eigenvalues.len() as i64, || "winding mismatch".into())?;
        let mut worst = 0.0_f64;
        for e in &rep.eigenvalues {
            let d = reference.iter().map(|z| (z - e.value).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
        ensure(worst < 1e-6, || format!("largest mismatch {worst:.3e}"))?;
        Ok(format!("{} zero(s), max distance {worst:.1e}", rep.eigenvalues.len()))
    };
    vec![
        ("empty-resolvent family {r=0, φ∈{0,π}}", family_check()),
        ("determinant vanishes on family members", vanishing()),
        ("shooting oracle confirms family members", shooting()),
        ("empty resolvent exactly on the family", outside()),
        ("argument principle matches shooting oracle", spectrum()),
    ]
}

fn sec52() -> Vec<(&'static str, Check)> {
    let model = SturmLiouvilleModel::new(Potential::Zero);
    let cd = indefinite_sl(model.clone()).map_err(err);
    let probe = cd.clone().and_then(|cd| ResolventProbe::new(&cd).map_err(err));

    let not_equivalent = || -> Check {
        match probe.clone()?.equivalence() {
            ApproxEqualResult::NotEquivalent(res) if res > 0.01 => Ok(format!("residual = {res:.6}")),
            other => Err(format!("equivalence test gave {other:?}")),
        }
    };
    let no_member = || -> Check {
        let probe = probe.clone()?;
        ensure(
            EmptyResolventFamily::from_equivalence(probe.equivalence()) == EmptyResolventFamily::Empty,
            || "family is not empty".into(),
        )?;
        let lat = lattice();
        for u in &lat {
            let v = probe.verdict(u).map_err(err)?;
            ensure(v == Verdict::DiscreteSet, || format!("{u:?} has verdict {}", v.name()))?;
        }
        Ok(format!("{} lattice points", lat.len()))
    };
    let phase = || -> Check {
        let p = m_phase_candidate(&model).map_err(err)?;
        ensure((p + 1.0).norm() < 1e-6, || format!("phase candidate {p}"))?;
        Ok(format!("{:.9}{:+.1e}i", p.re, p.im))
    };
    let identity = || -> Check {
        let d = m_identity_residual(&model, C64::new(0.0, 4.0)).map_err(err)?;
        ensure(d.norm() > 1e-3, || format!("residual {d}"))?;
        Ok(format!("{:.6}{:+.6}i", d.re, d.im))
    };
    let classes = || -> Check {
        let classifier = Classifier::from_equivalence(probe.clone()?.equivalence());
        let lat = lattice();
        for u in &lat {
            let res = classifier.classify(u);
            let expected = if u.q == 0.0 { ExtensionClass::UpsilonJ } else { ExtensionClass::Generic };
            ensure(res.class == expected, || format!("{u:?} classified as {}", res.class.name()))?;
        }
        Ok(format!("{} lattice points", lat.len()))
    };
    vec![
        ("s+ and s- are not equivalent", not_equivalent()),
        ("no empty-resolvent member", no_member()),
        ("phase candidate equals -1", phase()),
        ("m-function identity fails at 4i", identity()),
        ("classes are UpsilonJ and Generic only", classes()),
    ]
}

fn sec53() -> Vec<(&'static str, Check)> {
    let cd = zero_chardata();
    let lat = lattice();
    let classified = Classifier::new(&cd)
        .map(|c| lat.iter().map(|u| (c.classify(u), *u)).collect::<Vec<_>>())
        .map_err(err);

    let partition = || -> Check {
        let mut counts = [0usize; 5];
        for (res, u) in classified.clone()? {
            let expected = if u.r == 0.0 {
                ExtensionClass::EmptyResolvent
            } else if u.q == 0.0 {
                ExtensionClass::UpsilonJ
            } else {
                ExtensionClass::SigmaJstProper
            };
            ensure(res.class == expected, || format!("{u:?} classified as {}", res.class.name()))?;
            counts[res.class as usize] += 1;
        }
        ensure(counts[ExtensionClass::UpsilonU as usize] == 0, || "UpsilonU is not empty".into())?;
        Ok(format!(
            "{} EmptyResolvent / {} UpsilonJ / {} SigmaJstProper",
            counts[ExtensionClass::EmptyResolvent as usize],
            counts[ExtensionClass::UpsilonJ as usize],
            counts[ExtensionClass::SigmaJstProper as usize]
        ))
    };
    let certificates = || -> Check {
        let mut n = 0;
        for (res, u) in classified.clone()? {
            if res.csym.is_some() {
                ensure(certificate(&res, &u), || format!("C does not preserve the extension {u:?}"))?;
                n += 1;
            }
        }
        Ok(format!("{n} C-symmetries"))
    };
    let verdicts = || -> Check {
        let probe = ResolventProbe::new(&cd).map_err(err)?;
        for u in &lat {
            let v = probe.verdict(u).map_err(err)?;
            ensure((v == Verdict::IdenticallyZeroDeterminant) == (u.r == 0.0), || {
                format!("{u:?} has verdict {}", v.name())
            })?;
        }
        Ok(format!("{} lattice points", lat.len()))
    };
    vec![
        ("Upsilon_U empty, partition", partition()),
        ("C-symmetries preserve their extensions", certificates()),
        ("empty resolvent exactly when r = 0", verdicts()),
    ]
}

/// Runs a bundle, prints one line per check and reports whether all passed.
pub fn run(name: ExampleName) -> bool {
    let checks = match name {
        ExampleName::Sec51 => sec51(),
        ExampleName::Sec52 => sec52(),
        ExampleName::Sec53 => sec53(),
    };
    let mut ok = true;
    for (label, outcome) in checks {
        match outcome {
            Ok(detail) if detail.is_empty() => println!("{label}: PASS"),
            Ok(detail) => println!("{label}: PASS ({detail})"),
            Err(why) => {
                ok = false;
                println!("{label}: FAIL ({why})");
            }
        }
    }
    ok
}
