use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use resonance_core::airy::{
    airy_members, build_airy_witness, conditional_l6_scan, permutation_count, restricted_scan, satisfies_gap, AiryAnchor,
    AiryMethod,
};
use resonance_core::irrational::{find_dc_witness, picard_split};
use resonance_core::lattice::{
    count_gamma_2d, count_gamma_dprime_3d, count_gamma_prime_1d, count_orthogonal_pairs, direction_sum_3d,
    fast_orthogonal_count, CountMethod, FrequencyBox, ResonanceCount,
};
use resonance_core::numtheory::{
    continued_fraction, lcm_log_bound, totient_sum_ratio, FactorBudget, GammaPreset, SIX_OVER_PI_SQUARED,
};
use resonance_core::picard::{is_resonant_time, lower_bound_certificate, picard_coefficients, picard_l2_norm};
use resonance_core::strichartz::{l4_norm_2d, l4_norm_3d, l6_norm_1d, WavePacketSpec};
use resonance_core::{Error, Result};

use crate::args::*;
use crate::report::{Report, Value};

/// `p` and `q` are printed in full up to this many bits.
const PRINTED_WITNESS_BITS: u64 = 4096;

pub fn dispatch(command: &Command, seed: u64) -> Result<Report> {
    match command {
        Command::Resonance(Resonance::Count(a)) => resonance(a, false),
        Command::Resonance(Resonance::Scan(a)) => resonance(a, true),
        Command::Strichartz(a) => strichartz(a),
        Command::Picard(a) => picard(a),
        Command::Irrational(a) => irrational(a),
        Command::Airy(Airy::Count(a)) => airy_count(a),
        Command::Airy(Airy::Witness(a)) => airy_witness(a),
        Command::Airy(Airy::Scan(a)) => airy_scan(a, seed),
        Command::Asymptotics(a) => asymptotics(a),
    }
}

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Resonance(Resonance::Count(_)) => "resonance count",
        Command::Resonance(Resonance::Scan(_)) => "resonance scan",
        Command::Strichartz(_) => "strichartz",
        Command::Picard(_) => "picard",
        Command::Irrational(_) => "irrational",
        Command::Airy(Airy::Count(_)) => "airy count",
        Command::Airy(Airy::Witness(_)) => "airy witness",
        Command::Airy(Airy::Scan(_)) => "airy scan",
        Command::Asymptotics(Asymptotics::TotientLimit(_)) => "asymptotics totient-limit",
        Command::Asymptotics(Asymptotics::QuadrantCore(_)) => "asymptotics quadrant-core",
        Command::Asymptotics(Asymptotics::DirectionSum(_)) => "asymptotics direction-sum",
        Command::Asymptotics(Asymptotics::LcmBound(_)) => "asymptotics lcm-bound",
        Command::Asymptotics(Asymptotics::ContinuedFraction(_)) => "asymptotics continued-fraction",
    }
}

fn parse_anchor(text: &str, dim: usize) -> Result<Vec<i64>> {
    let k: Vec<i64> = text
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("anchor `{text}` is not a comma-separated integer list")))?;
    if k.len() != dim {
        return Err(Error::InvalidArgument(format!("anchor `{text}` has {} components, --dim is {dim}", k.len())));
    }
    Ok(k)
}

fn parse_big(text: &str, what: &str) -> Result<BigInt> {
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{what} `{text}` is not an integer")))
}

fn format_anchor(k: &[i64]) -> String {
    k.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn count_once(dim: usize, n: u32, k: Option<&[i64]>, method: CountMethod) -> Result<ResonanceCount> {
    let b = FrequencyBox::new(dim, n)?;
    match (dim, k) {
        (1, k) => count_gamma_prime_1d(b, k.map_or(0, |k| k[0]), method),
        (2, Some(k)) => count_gamma_2d(b, [k[0], k[1]], method),
        (3, Some(k)) => count_gamma_dprime_3d(b, [k[0], k[1], k[2]], method),
        (_, None) => count_orthogonal_pairs(b, method),
        _ => Err(Error::Dimension(dim)),
    }
}

fn resonance(a: &CountArgs, scan: bool) -> Result<Report> {
    let dim = a.dim as usize;
    let k = a.k.as_deref().map(|s| parse_anchor(s, dim)).transpose()?;
    let method: CountMethod = match &a.method {
        Some(m) => m.parse()?,
        None if dim == 1 => CountMethod::MeetInMiddle,
        None => CountMethod::Fast,
    };
    let mut report = Report::new(&["set", "dim", "N", "k", "method", "count", "ratio_n2_log_n", "ratio_n4"]);
    let radii: Vec<u32> = if scan { (1..=a.n).collect() } else { vec![a.n] };
    for r in radii {
        let c = match count_once(dim, r, k.as_deref(), method) {
            // small radii of a scan may not reach the anchor yet
            Err(Error::AnchorOutOfRange { .. }) if scan => continue,
            other => other?,
        };
        report.push(vec![
            c.kind.name().into(),
            (dim as u32).into(),
            r.into(),
            c.anchor.as_deref().map(format_anchor).into(),
            method.name().into(),
            c.count.into(),
            c.ratio_to_n2_log_n().into(),
            (c.count as f64 / (r as f64).powi(4)).into(),
        ]);
    }
    Ok(report.with_plot("N", "ratio_n2_log_n"))
}

fn strichartz(a: &StrichartzArgs) -> Result<Report> {
    let r = match a.dim {
        1 => l6_norm_1d(a.n, a.m)?,
        2 => l4_norm_2d(a.n, a.m)?,
        _ if a.m != 1 => return Err(Error::InvalidArgument("the 3d norm is defined for m = 1 only".into())),
        _ => l4_norm_3d(a.n)?,
    };
    let mut report = Report::new(&[
        "exponent", "dim", "N", "m", "resonant_tuple_count", "norm_powered", "ratio_to_log", "norm_over_n",
    ]);
    report.push(vec![
        r.exponent.name().into(),
        (a.dim as u32).into(),
        a.n.into(),
        a.m.into(),
        r.resonant_tuple_count.into(),
        r.norm_powered.into(),
        r.ratio_to_log.into(),
        r.norm_over_n().into(),
    ]);
    Ok(report)
}

fn picard(a: &PicardArgs) -> Result<Report> {
    let dim = a.dim as usize;
    let spec = WavePacketSpec::new(dim, a.m, a.n)?;
    let t = a.t.unwrap_or(2.0 * PI / (a.m as f64).powi(2));
    if let Some(text) = &a.k {
        let k = parse_anchor(text, dim)?;
        let table = picard_coefficients(&spec, t)?;
        let z = table.at_anchor(&k).unwrap_or_default();
        let mut report = Report::new(&["dim", "N", "m", "t", "k", "re", "im", "abs"]);
        report.push(vec![
            (dim as u32).into(),
            a.n.into(),
            a.m.into(),
            t.into(),
            format_anchor(&k).into(),
            z.re.into(),
            z.im.into(),
            z.norm().into(),
        ]);
        return Ok(report);
    }
    let norm = picard_l2_norm(&spec, t)?;
    let mut report = Report::new(&[
        "dim", "N", "m", "t", "resonant_time", "l2_norm", "norm_over_log", "lower_bound_certificate",
    ]);
    report.push(vec![
        (dim as u32).into(),
        a.n.into(),
        a.m.into(),
        t.into(),
        is_resonant_time(a.m, t).into(),
        norm.into(),
        (a.n > 1).then(|| norm / (a.n as f64).ln()).into(),
        lower_bound_certificate(dim, a.n, a.m)?.into(),
    ]);
    Ok(report)
}

fn irrational(a: &IrrationalArgs) -> Result<Report> {
    let gamma: GammaPreset = a.gamma.parse()?;
    if let Some(t) = a.t {
        let split = picard_split(&gamma, a.n, t, a.depth)?;
        let mut report = Report::new(&[
            "gamma", "N", "t", "kx", "ky", "resonant_count", "nonresonant_count", "max_resonant_phase",
            "min_nonresonant_phase", "resonant_re", "resonant_im", "nonresonant_re", "nonresonant_im",
            "nonresonant_bound", "nonresonant_tuple_bound", "resonant_certified", "q_bits", "l2_lower_bound",
            "constant",
        ]);
        for s in &split.anchors {
            report.push(vec![
                gamma.to_string().into(),
                a.n.into(),
                t.into(),
                s.anchor[0].into(),
                s.anchor[1].into(),
                s.resonant_count.into(),
                s.nonresonant_count.into(),
                s.max_resonant_phase.into(),
                s.min_nonresonant_phase.into(),
                s.resonant_sum.re.into(),
                s.resonant_sum.im.into(),
                s.nonresonant_sum.map(|z| z.re).into(),
                s.nonresonant_sum.map(|z| z.im).into(),
                s.nonresonant_bound.into(),
                s.nonresonant_tuple_bound.into(),
                s.resonant_real_certified.into(),
                split.witness.q_bits().into(),
                split.l2_lower_bound.into(),
                split.constant.into(),
            ]);
        }
        return Ok(report.with_plot("kx", "resonant_re"));
    }
    let mut report = Report::new(&[
        "gamma", "N", "found", "convergent_index", "p", "q", "q_bits", "defect_lo", "defect_hi", "best_defect_lo",
        "best_defect_hi",
    ]);
    match find_dc_witness(&gamma, a.n, a.depth) {
        Ok(w) => {
            let printed = w.q_bits() <= PRINTED_WITNESS_BITS;
            report.push(vec![
                gamma.to_string().into(),
                a.n.into(),
                true.into(),
                w.convergent_index.into(),
                printed.then(|| w.p.clone()).into(),
                printed.then(|| w.q.clone()).into(),
                w.q_bits().into(),
                w.defect.lo_f64().into(),
                w.defect.hi_f64().into(),
                Value::Null,
                Value::Null,
            ]);
        }
        Err(Error::WitnessNotFound { best_defect_lo, best_defect_hi, .. }) => {
            report.push(vec![
                gamma.to_string().into(),
                a.n.into(),
                false.into(),
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                best_defect_lo.into(),
                best_defect_hi.into(),
            ]);
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn airy_count(a: &AiryCountArgs) -> Result<Report> {
    let anchor = AiryAnchor::new(parse_big(&a.cube_sum, "cube sum")?, parse_big(&a.k, "k")?, a.n)?;
    let method: AiryMethod = a.method.parse()?;
    let members = airy_members(&anchor, method, FactorBudget::default())?;
    let unordered: BTreeSet<_> = members
        .iter()
        .map(|t| {
            let mut s = t.clone();
            s.sort();
            s
        })
        .collect();
    let restricted = match a.gap_factor {
        Some(g) => {
            if !(g >= 2.0 && g.is_finite()) {
                return Err(Error::InvalidArgument(format!("gap factor {g} must be at least 2")));
            }
            let gap = num_rational::BigRational::from_float(g).expect("finite");
            Some(members.iter().filter(|t| satisfies_gap(t, &gap)).count() as u64)
        }
        None => None,
    };
    let mut report = Report::new(&[
        "n", "k", "N", "method", "ordered_count", "unordered_count", "gap_factor", "restricted_count",
    ]);
    report.push(vec![
        anchor.n().into(),
        anchor.k().into(),
        a.n.into(),
        method.name().into(),
        (members.len() as u64).into(),
        (unordered.len() as u64).into(),
        a.gap_factor.into(),
        restricted.into(),
    ]);
    Ok(report)
}

fn airy_witness(a: &AiryWitnessArgs) -> Result<Report> {
    let w = build_airy_witness(a.m)?;
    let mut report = Report::new(&[
        "m", "x", "k1", "k2", "k3", "k", "n", "lcm", "orderings", "n_min", "growth_ratio", "lcm_bound_holds",
    ]);
    for (i, t) in w.triples.iter().enumerate() {
        report.push(vec![
            a.m.into(),
            (i as u32 + 1).into(),
            (&t[0]).into(),
            (&t[1]).into(),
            (&t[2]).into(),
            (&w.k).into(),
            (&w.n).into(),
            w.lcm.clone().into(),
            permutation_count(t).into(),
            w.n_min.clone().into(),
            w.growth_ratio().into(),
            w.lcm_bound.holds.into(),
        ]);
    }
    Ok(report.with_plot("x", "k3"))
}

fn airy_scan(a: &AiryScanArgs, seed: u64) -> Result<Report> {
    if let Some(g) = a.gap_factor {
        let s = restricted_scan(a.n, g, a.samples, seed)?;
        let mut report = Report::new(&[
            "N", "gap_factor", "seed", "samples", "restricted_count", "anchors", "max_count", "argmax_n", "argmax_k",
        ]);
        for (c, &anchors) in s.histogram.iter().enumerate() {
            report.push(vec![
                a.n.into(),
                g.into(),
                seed.into(),
                (a.samples as u64).into(),
                (c as u64).into(),
                (anchors as u64).into(),
                s.max_count.into(),
                s.argmax.0.into(),
                s.argmax.1.into(),
            ]);
        }
        return Ok(report.with_plot("restricted_count", "anchors"));
    }
    let s = conditional_l6_scan(a.n)?;
    let mut report = Report::new(&["N", "k", "cube_ninth_n", "cube_ninth_count", "generic_max", "generic_argmax_n"]);
    for row in &s.rows {
        report.push(vec![
            a.n.into(),
            row.k.into(),
            row.cube_ninth.map(|_| row.k.pow(3) / 9).into(),
            row.cube_ninth.into(),
            row.generic_max.into(),
            row.generic_argmax.into(),
        ]);
    }
    Ok(report.with_plot("k", "generic_max"))
}

fn asymptotics(a: &Asymptotics) -> Result<Report> {
    match a {
        Asymptotics::TotientLimit(r) => {
            let s = totient_sum_ratio(r.n as usize)?;
            let mut report = Report::new(&["N", "sum", "ratio", "limit", "lower_chain_holds"]);
            report.push(vec![
                r.n.into(),
                s.sum.into(),
                s.ratio.into(),
                SIX_OVER_PI_SQUARED.into(),
                s.lower_chain_holds().into(),
            ]);
            Ok(report)
        }
        Asymptotics::QuadrantCore(r) => {
            let d = fast_orthogonal_count(r.n)?;
            let mut report = Report::new(&["N", "zero_first", "zero_second", "quadrant_core", "total", "core_ratio"]);
            report.push(vec![
                r.n.into(),
                d.zero_first.into(),
                d.zero_second.into(),
                d.quadrant_core.into(),
                d.total.into(),
                d.core_ratio().into(),
            ]);
            Ok(report)
        }
        Asymptotics::DirectionSum(r) => {
            let d = direction_sum_3d(r.n)?;
            let mut report = Report::new(&["N", "sum", "terms", "ratio_n4"]);
            report.push(vec![r.n.into(), d.sum.into(), (d.terms.len() as u64).into(), d.ratio().into()]);
            Ok(report)
        }
        Asymptotics::LcmBound(m) => {
            if m.m == 0 {
                return Err(Error::InvalidArgument("m must be positive".into()));
            }
            let b = lcm_log_bound(m.m);
            let mut report = Report::new(&["m", "lcm", "prime_count", "log_lcm", "log_bound", "holds"]);
            report.push(vec![
                m.m.into(),
                b.lcm.clone().into(),
                b.prime_count.into(),
                b.log_lcm.into(),
                b.log_bound.into(),
                b.holds.into(),
            ]);
            Ok(report)
        }
        Asymptotics::ContinuedFraction(c) => {
            let gamma: GammaPreset = c.gamma.parse()?;
            let cf = continued_fraction(&gamma, c.depth)?;
            let mut report = Report::new(&["index", "quotient", "p", "q", "convergent", "sandwich_holds", "terminated"]);
            for (i, (p, q)) in cf.convergents().iter().enumerate() {
                let a: BigInt = if i == 0 { cf.integer_part().clone() } else { cf.quotients()[i - 1].clone().into() };
                let value = cf.convergent(i);
                report.push(vec![
                    (i as u64).into(),
                    a.into(),
                    p.into(),
                    q.clone().into(),
                    value.to_f64().into(),
                    cf.sandwich_holds(&gamma, i).into(),
                    cf.terminated().into(),
                ]);
            }
            Ok(report.with_plot("index", "quotient"))
        }
    }
}
