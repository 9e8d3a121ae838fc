//! The fixed list of claims checked by `mvse verify-paper`.

use mvse_core::auerbach::{
    lower_auerbach_bases_with, upper_auerbach_bases_with, AuerbachConfig, AuerbachFamily, Basis,
};
use mvse_core::exactlin::{q, qi, RMatrix, RVector};
use mvse_core::mvse::{decide_with, hexagon_regular_equiv, Answer};
use mvse_core::polytope::section2;
use mvse_core::projections::{
    exists_norm_one_projection, hexagonal_subspace_candidates, Complementedness,
};
use mvse_core::spaces::{self, PolyhedralSpace};
use mvse_core::Result;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperSuiteResult {
    pub records: Vec<ClaimRecord>,
    pub pass: bool,
}

fn answer_name(a: Answer) -> &'static str {
    match a {
        Answer::ParallelepipedOnly => "parallelepiped_only",
        Answer::NonParallelepipedal => "non_parallelepipedal",
    }
}

fn record(claim: &str, expected: &str, computed: Result<String>) -> ClaimRecord {
    let computed = computed.unwrap_or_else(|e| format!("error: {e}"));
    ClaimRecord {
        claim: claim.to_string(),
        expected: expected.to_string(),
        pass: computed == expected,
        computed,
    }
}

fn decision(space: &PolyhedralSpace, cfg: AuerbachConfig) -> Result<String> {
    Ok(answer_name(decide_with(space, cfg)?.answer).to_string())
}

/// Half-integer lower basis of `ℓ₁³`.
pub fn half_matrix() -> RMatrix {
    let (h, z) = (q(1, 2), qi(0));
    RMatrix::from_rows(&[
        RVector::new(vec![z.clone(), h.clone(), h.clone()]),
        RVector::new(vec![h.clone(), z.clone(), -&h]),
        RVector::new(vec![h.clone(), -&h, z]),
    ])
    .expect("3x3")
}

fn pair_is_hexagonal(space: &PolyhedralSpace, b: &Basis, i: usize, j: usize) -> Result<bool> {
    let s = section2(&space.ball, &b.column(i), &b.column(j))?;
    Ok(hexagon_regular_equiv(&s).is_some())
}

fn l1_3_claim(cfg: AuerbachConfig) -> Result<String> {
    let space = spaces::l1(3)?;
    let report = decide_with(&space, cfg)?;
    let lower = lower_auerbach_bases_with(&space.ball, cfg)?;
    let half = Basis::from_matrix(half_matrix())?;
    let upper_cube = upper_auerbach_bases_with(&spaces::linf(3)?.ball, cfg)?;
    let signs = Basis::from_matrix(RMatrix::from_int_rows(&[
        &[1, 1, 1],
        &[1, 1, -1],
        &[1, -1, 1],
    ]))?;
    let ok = lower.contains(&half)
        && upper_cube.contains(&signs)
        && signs.biorthogonal.transpose() == half.vectors
        && pair_is_hexagonal(&space, &half, 0, 1)?;
    Ok(if ok {
        answer_name(report.answer).to_string()
    } else {
        "witness matrices not reproduced".to_string()
    })
}

fn sum_zero_claim(cfg: AuerbachConfig) -> Result<String> {
    let space = spaces::sum_zero();
    let report = decide_with(&space, cfg)?;
    let lower = lower_auerbach_bases_with(&space.ball, cfg)?;
    let id = Basis::from_matrix(RMatrix::identity(3))?;
    let mut ok = lower.contains(&id);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        ok &= pair_is_hexagonal(&space, &id, i, j)?;
    }
    Ok(if ok {
        answer_name(report.answer).to_string()
    } else {
        "identity basis not a hexagonal lower basis".to_string()
    })
}

fn hexagon_l1_line_claim(cfg: AuerbachConfig) -> Result<String> {
    let space = spaces::l1_sum(&spaces::rational_hexagon(), &spaces::l1(1)?)?;
    let answer = decide_with(&space, cfg)?.answer;
    let block = [
        RVector::from_ints(&[1, 0, 0]),
        RVector::from_ints(&[0, 1, 0]),
    ];
    let comp = exists_norm_one_projection(&space.ball, &block)?;
    let c = match comp.answer {
        Complementedness::NormOneExists => "block 1-complemented",
        Complementedness::NotOneComplemented => "block not 1-complemented",
    };
    Ok(format!("{} + {c}", answer_name(answer)))
}

fn candidates_claim() -> Result<String> {
    let space = spaces::sum_zero();
    let cands = hexagonal_subspace_candidates(&space)?;
    let mut complemented = 0;
    for c in &cands {
        if exists_norm_one_projection(&space.ball, &c.coords)?.answer
            == Complementedness::NormOneExists
        {
            complemented += 1;
        }
    }
    Ok(format!(
        "{} candidates, {complemented} 1-complemented",
        cands.len()
    ))
}

/// Lower bases against the dual's upper bases: membership and
/// `|det K|·|det K*| = 1`.
fn duality_holds(space: &PolyhedralSpace, cfg: AuerbachConfig) -> Result<bool> {
    let lower: AuerbachFamily = lower_auerbach_bases_with(&space.ball, cfg)?;
    let upper = upper_auerbach_bases_with(&space.ball.polar_dual(), cfg)?;
    for k in &lower.bases {
        let k_star = Basis::from_matrix(k.biorthogonal.transpose())?;
        if !upper.contains(&k_star) || !(k.abs_det() * k_star.abs_det()).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn duality_claim(cfg: AuerbachConfig) -> Result<String> {
    let hex = spaces::rational_hexagon();
    let list = vec![
        spaces::linf(2)?,
        spaces::linf(3)?,
        spaces::linf(4)?,
        spaces::l1(2)?,
        spaces::l1(3)?,
        spaces::l1(4)?,
        spaces::sum_zero(),
        hex.clone(),
        spaces::l1_sum(&hex, &spaces::l1(1)?)?,
        spaces::linf_sum(&hex, &spaces::linf(1)?)?,
    ];
    let mut failing = Vec::new();
    for s in &list {
        if !duality_holds(s, cfg)? {
            failing.push(s.name.clone());
        }
    }
    Ok(if failing.is_empty() {
        "holds on all families".to_string()
    } else {
        format!("fails on {}", failing.join(", "))
    })
}

pub fn run(cfg: AuerbachConfig) -> PaperSuiteResult {
    let po = "parallelepiped_only";
    let np = "non_parallelepipedal";
    let mut records = Vec::new();
    for n in 2..=4 {
        records.push(record(
            &format!("linf{n}_parallelepiped_only"),
            po,
            spaces::linf(n).and_then(|s| decision(&s, cfg)),
        ));
    }
    for n in [2, 4] {
        records.push(record(
            &format!("l1_{n}_hadamard_parallelepiped_only"),
            po,
            spaces::l1(n).and_then(|s| decision(&s, cfg)),
        ));
    }
    records.push(record("l1_3_hexagonal_witness", np, l1_3_claim(cfg)));
    records.push(record(
        "sum_zero_identity_lower_basis",
        np,
        sum_zero_claim(cfg),
    ));
    records.push(record(
        "hexagon_l1_line",
        "parallelepiped_only + block 1-complemented",
        hexagon_l1_line_claim(cfg),
    ));
    records.push(record(
        "hexagon_linf_line",
        np,
        spaces::linf(1)
            .and_then(|line| spaces::linf_sum(&spaces::rational_hexagon(), &line))
            .and_then(|s| decision(&s, cfg)),
    ));
    records.push(record(
        "sum_zero_hexagonal_planes_not_1_complemented",
        "12 candidates, 0 1-complemented",
        candidates_claim(),
    ));
    records.push(record(
        "volume_product_duality",
        "holds on all families",
        duality_claim(cfg),
    ));
    let pass = records.iter().all(|r| r.pass);
    PaperSuiteResult { records, pass }
}
