//! Random system generators shared by the integration tests.
#![allow(dead_code)]

use gframe::linalg::{self, ComplexMatrix, ComplexVector};
use gframe::random::{gaussian_matrix, random_coisometry, random_isometry, random_projective, random_unitary};
use gframe::{ReconstructionSystem, DEFAULT_TOLERANCE};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TOL: f64 = DEFAULT_TOLERANCE;

pub fn random_vector<R: Rng>(rng: &mut R, d: usize) -> ComplexVector {
    ComplexVector::from_column_slice(gaussian_matrix(rng, d, 1, 1.0).as_slice())
}

/// Block dimensions with `k_i <= min(max_k, d)` and `sum k_i >= d`.
pub fn random_dims<R: Rng>(rng: &mut R, d: usize, m: usize, max_k: usize) -> Vec<usize> {
    loop {
        let k: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=max_k.min(d))).collect();
        if k.iter().sum::<usize>() >= d {
            return k;
        }
    }
}

/// Projective RS with `d <= 12`, `m <= 6`, `k_i <= 4` and redundancy.
/// Weights are pairwise distinct unless `uniform`.
pub fn random_projective_rs<R: Rng>(rng: &mut R, uniform: bool) -> ReconstructionSystem {
    loop {
        let d = rng.gen_range(2..=12);
        let m = rng.gen_range(2..=6);
        if m * 4.min(d) <= d {
            continue;
        }
        let k = random_dims(rng, d, m, 4);
        if k.iter().sum::<usize>() == d {
            continue;
        }
        let weights: Vec<f64> = if uniform {
            vec![rng.gen_range(0.3..3.0); m]
        } else {
            (0..m).map(|i| 0.4 + 0.35 * i as f64 + rng.gen_range(0.0..0.3)).collect()
        };
        let v = random_projective(rng, &k, d, &weights).unwrap();
        if v.is_rs(TOL) {
            return v;
        }
    }
}

/// Equi-dimensional uniform projective protocol: `r` random unitaries of size
/// `d`, each cut into row blocks of size `k`, scaled by `1/sqrt r`.
pub fn random_uniform_protocol<R: Rng>(rng: &mut R) -> ReconstructionSystem {
    let d = rng.gen_range(2..=8);
    let divisors: Vec<usize> = (1..d).filter(|k| d % k == 0).collect();
    let k = *divisors.choose(rng).unwrap();
    let r = rng.gen_range(2..=3);
    let scale = 1.0 / (r as f64).sqrt();
    let mut blocks = Vec::new();
    for _ in 0..r {
        let u = random_unitary(rng, d);
        for start in (0..d).step_by(k) {
            blocks.push(u.rows(start, k).into_owned().scale(scale));
        }
    }
    ReconstructionSystem::new(d, blocks).unwrap()
}

/// Gaussian RS with `d <= 8`, `m <= 6`.
pub fn random_gaussian_rs<R: Rng>(rng: &mut R) -> ReconstructionSystem {
    loop {
        let d = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=6);
        let k: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=d.min(4))).collect();
        if k.iter().sum::<usize>() < d {
            continue;
        }
        let v = gframe::random::random_system(rng, &k, d).unwrap();
        if v.is_rs(TOL) {
            return v;
        }
    }
}

/// Injective (every block surjective) Gaussian system.
pub fn random_injective_rs<R: Rng>(rng: &mut R) -> ReconstructionSystem {
    loop {
        let v = random_gaussian_rs(rng);
        if v.classify(TOL).is_injective {
            return v;
        }
    }
}

/// Random Riesz RS of one of three kinds:
/// 0: Gaussian blocks;
/// 1: orthogonal direct sum (rows of a unitary, blocks rescaled and rotated);
/// 2: inverse of a matrix whose column blocks are scaled isometries, so the
///    unique dual is projective while the sum is not orthogonal.
pub fn random_riesz_rs<R: Rng>(rng: &mut R, kind: usize) -> ReconstructionSystem {
    let d = rng.gen_range(2..=8);
    let mut k = Vec::new();
    let mut left = d;
    while left > 0 {
        let ki = rng.gen_range(1..=left.min(3));
        k.push(ki);
        left -= ki;
    }
    match kind {
        0 => gframe::random::random_system(rng, &k, d).unwrap(),
        1 => {
            let u = random_unitary(rng, d);
            let mut offset = 0;
            let blocks = k
                .iter()
                .map(|&ki| {
                    let rot = random_unitary(rng, ki);
                    let b = (rot * u.rows(offset, ki)).scale(rng.gen_range(0.5..2.0));
                    offset += ki;
                    b
                })
                .collect();
            ReconstructionSystem::new(d, blocks).unwrap()
        }
        _ => {
            let mut synthesis = ComplexMatrix::zeros(d, d);
            let mut offset = 0;
            for &ki in &k {
                let iso = random_isometry(rng, d, ki).scale(rng.gen_range(0.5..2.0));
                synthesis.view_mut((0, offset), (d, ki)).copy_from(&iso);
                offset += ki;
            }
            let analysis = linalg::inverse(&synthesis).expect("generic matrix is invertible");
            let mut offset = 0;
            let blocks = k
                .iter()
                .map(|&ki| {
                    let b = analysis.rows(offset, ki).into_owned();
                    offset += ki;
                    b
                })
                .collect();
            ReconstructionSystem::new(d, blocks).unwrap()
        }
    }
}

/// Projective system whose range projections commute: coordinate subsets of a
/// random orthonormal basis, each block rotated by a random unitary and scaled.
/// Coordinate 0 is covered by exactly `r0` blocks.
pub fn random_commuting_projective<R: Rng>(rng: &mut R, r0: usize) -> ReconstructionSystem {
    let m = r0.max(rng.gen_range(2..=8));
    let d = rng.gen_range(2..=6);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); d];
    let mut all: Vec<usize> = (0..m).collect();
    all.shuffle(rng);
    members[0] = all[..r0].to_vec();
    for mem in members.iter_mut().skip(1) {
        let r = rng.gen_range(1..=m);
        all.shuffle(rng);
        *mem = all[..r].to_vec();
    }
    // Every block needs at least one coordinate; attach orphans to coordinates >= 1.
    for i in 0..m {
        if !members.iter().any(|mem| mem.contains(&i)) {
            let j = rng.gen_range(1..d);
            members[j].push(i);
        }
    }
    let basis = random_unitary(rng, d);
    let blocks = (0..m)
        .map(|i| {
            let coords: Vec<usize> = (0..d).filter(|&j| members[j].contains(&i)).collect();
            let mut rows = ComplexMatrix::zeros(coords.len(), d);
            for (r, &j) in coords.iter().enumerate() {
                rows.set_row(r, &basis.column(j).adjoint());
            }
            let rot = random_unitary(rng, coords.len());
            (rot * rows).scale(rng.gen_range(0.5..2.0))
        })
        .collect();
    ReconstructionSystem::new(d, blocks).unwrap()
}

/// Random projective system with the same signature as `s`: random weights and coisometries.
pub fn random_projective_like<R: Rng>(rng: &mut R, s: &ReconstructionSystem) -> ReconstructionSystem {
    let blocks = s
        .k()
        .iter()
        .map(|&ki| random_coisometry(rng, ki, s.d()).scale(rng.gen_range(0.05..3.0)))
        .collect();
    ReconstructionSystem::new(s.d(), blocks).unwrap()
}

pub fn max_block_distance(a: &ReconstructionSystem, b: &ReconstructionSystem) -> f64 {
    a.blocks().iter().zip(b.blocks()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
