//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Oracles used here are deliberately independent of the library code paths
//! they check (brute-force enumeration, character counting from group
//! tables, direct commutator checks).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use qsk::double::{check_double_star, double_irreducibles, double_trace_on, drinfeld_double};
use qsk::finalg::{
    gram_positivity, is_tracial, tensor_product, validate_algebra, GaussRat, Laurent,
    WedderburnConfig,
};
use qsk::fusion_zero::{
    coproduct_power_check, depth_two_dimensions, fusion_from_hopf, omega_on_corner,
    weight_zero_modules, zero_level_algebra, FusionDatum, Sign,
};
use qsk::hopf::{
    check_hopf_axioms, check_pairing, dual_opposite, function_algebra, group_algebra, GroupTable,
    PairingMatrix,
};
use qsk::temperley_lieb::{
    compose, compose_all, jones_projection, jones_word, markov_trace, star, tl_basis, JonesVariant,
    TLDiagram, TLElement,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn named_groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("Z2", GroupTable::cyclic(2)),
        ("Z3", GroupTable::cyclic(3)),
        ("Z4", GroupTable::cyclic(4)),
        ("S3", GroupTable::symmetric(3)),
    ]
}

/// Every group of order at most 6, up to isomorphism.
fn groups_up_to_six() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("Z1", GroupTable::cyclic(1)),
        ("Z2", GroupTable::cyclic(2)),
        ("Z3", GroupTable::cyclic(3)),
        ("Z4", GroupTable::cyclic(4)),
        (
            "Z2xZ2",
            GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)),
        ),
        ("Z5", GroupTable::cyclic(5)),
        ("Z6", GroupTable::cyclic(6)),
        ("S3", GroupTable::symmetric(3)),
    ]
}

fn criterion_1() -> Outcome {
    let mut worst = Duration::ZERO;
    for (name, g) in named_groups() {
        for (kind, build) in [
            ("group", group_algebra as fn(&GroupTable) -> _),
            ("functions", function_algebra),
        ] {
            let (ok, t) = timed(|| {
                let h = build(&g);
                validate_algebra(h.algebra()).is_ok() && check_hopf_axioms(&h).is_ok()
            });
            ensure(
                ok,
                format!("{kind} algebra of {name} fails the Hopf/Kac axioms"),
            )?;
            ensure(
                t < Duration::from_secs(1),
                format!("{kind}({name}) took {t:?}"),
            )?;
            worst = worst.max(t);
        }
    }
    Ok(format!("8 Kac algebras exact, slowest {worst:.2?}"))
}

fn criterion_2() -> Outcome {
    let (res, t) = timed(|| -> Result<(), String> {
        for (name, g) in named_groups() {
            let (hp, hm) = (group_algebra(&g), function_algebra(&g));
            let r = check_pairing(&hp, &hm, &PairingMatrix::evaluation(g.order()));
            ensure(
                r.is_ok(),
                format!("evaluation pairing rejected for {name}:\n{r}"),
            )?;
            let d = dual_opposite(&hp).map_err(|e| e.to_string())?;
            ensure(
                d == hm,
                format!("dual_opposite(C[{name}]) differs from F({name})"),
            )?;
        }
        Ok(())
    });
    res?;
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!(
        "pairing and (H^op)* = F(G) for Z2, Z3, Z4, S3 in {t:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let mut s3_time = Duration::ZERO;
    for (name, g) in groups_up_to_six() {
        let h = group_algebra(&g);
        let n = g.order();
        let (res, t) = timed(|| -> Result<(), String> {
            let d = drinfeld_double(&h).map_err(|e| e.to_string())?;
            let r = check_hopf_axioms(&d);
            ensure(r.is_ok(), format!("D(C[{name}]) fails:\n{r}"))?;
            // χ_H = Σ_g φ^g in the dual basis, 1_H = e: coordinates a·n + 0.
            let expected: Vec<GaussRat> = (0..n * n)
                .map(|k| GaussRat::from_i64(i64::from(k % n == 0)))
                .collect();
            ensure(
                d.algebra().unit() == expected.as_slice(),
                format!("unit of D(C[{name}]) is not χ⋈1"),
            )?;
            let sr = check_double_star(&h, &d).map_err(|e| e.to_string())?;
            ensure(
                sr.is_ok(),
                format!("star formulas disagree for {name}:\n{sr}"),
            )?;
            Ok(())
        });
        res?;
        if name == "S3" {
            s3_time = t;
            ensure(t < Duration::from_secs(10), format!("D(C[S3]) took {t:?}"))?;
        }
    }
    Ok(format!(
        "8 doubles (|G| ≤ 6) exact; dim 36 in {s3_time:.2?}"
    ))
}

fn criterion_4() -> Outcome {
    let mut min_eig = f64::INFINITY;
    for (name, g) in groups_up_to_six() {
        let h = group_algebra(&g);
        let d = drinfeld_double(&h).map_err(|e| e.to_string())?;
        let t = double_trace_on(&h, &d).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            is_tracial(d.algebra(), &t),
            format!("double trace of {name} not tracial"),
        )?;
        let gr = gram_positivity(d.algebra(), &t).map_err(|e| e.to_string())?;
        ensure(
            gr.min_eigenvalue > 1e-9,
            format!("{name}: min eigenvalue {}", gr.min_eigenvalue),
        )?;
        min_eig = min_eig.min(gr.min_eigenvalue);
    }
    Ok(format!("tracial, min Gram eigenvalue {min_eig:.3e} > 1e-9"))
}

/// Conjugacy classes of `g` as sorted element lists.
fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class: BTreeSet<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inverse(h))).collect();
        for &c in &class {
            seen[c] = true;
        }
        out.push(class.into_iter().collect());
    }
    out
}

/// Subgroup of `g` on `elems` as a standalone table.
fn subgroup(g: &GroupTable, elems: &[usize]) -> GroupTable {
    let mut elems = elems.to_vec();
    elems.sort_unstable();
    let pos = |x: usize| elems.binary_search(&x).expect("closed");
    let table = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| pos(g.mul(a, b))).collect())
        .collect();
    GroupTable::new(table).expect("subgroup")
}

/// Irreducible dimensions of a small group from counting alone: the number
/// of irreps is the number of classes, the number of linear ones is the
/// index of the commutator subgroup, every dimension divides |G| and the
/// squares sum to |G|. Panics unless this pins the multiset down.
fn irrep_dims(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    let classes = conjugacy_classes(g).len();
    let mut comm: BTreeSet<usize> = BTreeSet::from([0]);
    for a in 0..n {
        for b in 0..n {
            comm.insert(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
        }
    }
    loop {
        let before = comm.len();
        let cur: Vec<usize> = comm.iter().copied().collect();
        for &a in &cur {
            for &b in &cur {
                comm.insert(g.mul(a, b));
            }
        }
        if comm.len() == before {
            break;
        }
    }
    let linear = n / comm.len();
    let rest = classes - linear;
    let target = n - linear;
    let divisors: Vec<usize> = (2..=n)
        .filter(|d| n.is_multiple_of(*d) && d * d <= target)
        .collect();
    let mut solutions = Vec::new();
    fn search(
        divs: &[usize],
        start: usize,
        left: usize,
        remaining: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..divs.len() {
            let d = divs[i];
            if d * d <= remaining {
                cur.push(d);
                search(divs, i, left - 1, remaining - d * d, cur, out);
                cur.pop();
            }
        }
    }
    search(&divisors, 0, rest, target, &mut Vec::new(), &mut solutions);
    assert_eq!(solutions.len(), 1, "counting does not determine the irreps");
    let mut dims = vec![1; linear];
    dims.extend(&solutions[0]);
    dims.sort_unstable();
    dims
}

/// Irreps of D(G): pairs (class of g, irrep of the centralizer of g), of
/// dimension |class|·dim.
fn centralizer_pair_oracle(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    let mut dims = Vec::new();
    for class in conjugacy_classes(g) {
        let x = class[0];
        let cent: Vec<usize> = (0..n).filter(|&h| g.mul(h, x) == g.mul(x, h)).collect();
        for d in irrep_dims(&subgroup(g, &cent)) {
            dims.push(class.len() * d);
        }
    }
    dims.sort_unstable();
    dims
}

fn criterion_5() -> Outcome {
    let cfg = WedderburnConfig::default();
    for n in 1..=4 {
        let h = group_algebra(&GroupTable::cyclic(n));
        // Brute-force oracle: D(C[Z_n]) is commutative of dimension n², so it
        // splits into n² one-dimensional blocks.
        let d = drinfeld_double(&h).map_err(|e| e.to_string())?;
        let a = d.algebra();
        let commutative =
            (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.mul_basis(i, j) == a.mul_basis(j, i)));
        ensure(commutative, format!("D(C[Z{n}]) is not commutative"))?;
        let b = double_irreducibles(&h, &cfg).map_err(|e| e.to_string())?;
        ensure(
            b.sorted_dims() == vec![1; n * n],
            format!("Z{n}: blocks {:?}", b.sorted_dims()),
        )?;
    }
    let s3 = GroupTable::symmetric(3);
    let oracle = centralizer_pair_oracle(&s3);
    ensure(
        oracle == vec![1, 1, 2, 2, 2, 2, 3, 3],
        format!("oracle gave {oracle:?}"),
    )?;
    let b = double_irreducibles(&group_algebra(&s3), &cfg).map_err(|e| e.to_string())?;
    ensure(
        b.sorted_dims() == oracle,
        format!("S3: blocks {:?} vs oracle {oracle:?}", b.sorted_dims()),
    )?;
    ensure(b.sum_of_squares() == 36, "Σd² ≠ 36")?;
    Ok(format!(
        "Z1..Z4 give n² singletons; D(S3) blocks {:?}, Σd² = 36",
        b.sorted_dims()
    ))
}

fn criterion_6() -> Outcome {
    let g = GroupTable::symmetric(3);
    let datum = FusionDatum::group(&g);
    let z = zero_level_algebra(&datum).map_err(|e| e.to_string())?;
    let r = validate_algebra(&z.algebra);
    ensure(r.is_ok(), format!("zero-level algebra invalid:\n{r}"))?;
    let corner = z.corner(Sign::Plus);
    let omega = omega_on_corner(&corner, &z);
    ensure(is_tracial(&corner.algebra, &omega), "ω₊ not tracial")?;
    let gr = gram_positivity(&corner.algebra, &omega).map_err(|e| e.to_string())?;
    ensure(
        gr.is_positive_definite,
        format!("ω₊ min eigenvalue {}", gr.min_eigenvalue),
    )?;
    let b = weight_zero_modules(&datum, Sign::Plus, &WedderburnConfig::default())
        .map_err(|e| e.to_string())?;
    let oracle = irrep_dims(&g);
    ensure(
        b.sorted_dims() == oracle,
        format!(
            "modules {:?} vs character oracle {oracle:?}",
            b.sorted_dims()
        ),
    )?;
    ensure(oracle == vec![1, 1, 2], "character oracle is not {1,1,2}")?;
    Ok(format!(
        "S3 zero level valid, ω₊ faithful trace, modules {:?}",
        b.sorted_dims()
    ))
}

/// Independent count of non-crossing perfect matchings: enumerate every
/// fixed-point-free involution on 2n points and reject crossing chords.
fn brute_force_planar(n: usize) -> Vec<Vec<usize>> {
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(p) = partner.iter().position(|&x| x == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for q in p + 1..partner.len() {
            if partner[q] != usize::MAX {
                continue;
            }
            // Reject as soon as the new chord crosses an existing one.
            let crosses = (0..partner.len()).any(|r| {
                let s = partner[r];
                s != usize::MAX && r < s && ((r < p && p < s && s < q) || (p < r && r < q && q < s))
            });
            if crosses {
                continue;
            }
            partner[p] = q;
            partner[q] = p;
            rec(partner, out);
            partner[p] = usize::MAX;
            partner[q] = usize::MAX;
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; 2 * n], &mut out);
    out
}

fn criterion_7() -> Outcome {
    let catalan = |n: u64| -> u64 { (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2)) };
    for n in 0..=8usize {
        let oracle = brute_force_planar(n);
        let basis = tl_basis(n);
        ensure(
            basis.len() as u64 == catalan(n as u64),
            format!("|basis({n})| = {}", basis.len()),
        )?;
        ensure(
            oracle.len() == basis.len(),
            format!("oracle count {} for n = {n}", oracle.len()),
        )?;
        if n <= 5 {
            let a: BTreeSet<Vec<usize>> = oracle.into_iter().collect();
            let b: BTreeSet<Vec<usize>> = basis.iter().map(|d| d.partner().to_vec()).collect();
            ensure(a == b, format!("diagram sets differ at n = {n}"))?;
        }
    }
    let (res, t) = timed(|| -> Result<(), String> {
        let err = |e: qsk::temperley_lieb::TlError| e.to_string();
        let d = Laurent::delta_pow;
        for n in 2..=6 {
            let e = |i| jones_projection(n, i).map_err(err);
            for i in 1..n {
                ensure(
                    compose(&e(i)?, &e(i)?).map_err(err)? == e(i)?,
                    format!("e{i}² ≠ e{i} in TL{n}"),
                )?;
                ensure(star(&e(i)?) == e(i)?, "e_i not self-adjoint")?;
                ensure(
                    markov_trace(&e(i)?) == d(-2),
                    format!("tr(e{i}) ≠ δ⁻² in TL{n}"),
                )?;
                if i + 1 < n {
                    let x = compose_all(n, &[e(i)?, e(i + 1)?, e(i)?]).map_err(err)?;
                    ensure(
                        x.sub(&e(i)?.scale(&d(-2))).map_err(err)?.is_zero(),
                        "e_i e_{i+1} e_i ≠ δ⁻² e_i",
                    )?;
                    let y = compose_all(n, &[e(i + 1)?, e(i)?, e(i + 1)?]).map_err(err)?;
                    ensure(
                        y.sub(&e(i + 1)?.scale(&d(-2))).map_err(err)?.is_zero(),
                        "e_{i+1} e_i e_{i+1} ≠ δ⁻² e_{i+1}",
                    )?;
                }
                for j in i + 2..n {
                    ensure(
                        compose(&e(i)?, &e(j)?).map_err(err)?
                            == compose(&e(j)?, &e(i)?).map_err(err)?,
                        "far generators do not commute",
                    )?;
                }
            }
            // Markov property on every basis diagram of TL_{n-1}.
            let en = e(n - 1)?;
            for b in tl_basis(n - 1) {
                let x = TLElement::diagram(b, Laurent::delta_pow(0));
                let lhs = markov_trace(&compose(&x.embed(1), &en).map_err(err)?);
                let rhs = markov_trace(&x) * &d(-2);
                ensure(
                    (lhs - rhs).is_zero(),
                    format!("Markov property fails in TL{n}"),
                )?;
            }
        }
        let n = 4;
        let e = |i| jones_projection(n, i).map_err(err);
        let w = jones_word(JonesVariant::MinusOne, 1, n).map_err(err)?;
        let expected = compose_all(n, &[e(2)?, e(1)?, e(3)?, e(2)?])
            .map_err(err)?
            .scale(&d(2));
        ensure(w == expected, "e_[-1,1] ≠ δ² e2 e1 e3 e2")?;
        ensure(
            compose(&w, &w).map_err(err)? == w,
            "e_[-1,1] not idempotent",
        )?;
        ensure(star(&w) == w, "e_[-1,1] not fixed by star")?;
        let nested = TLDiagram::new(vec![3, 2, 1, 0, 7, 6, 5, 4]).map_err(err)?;
        ensure(
            w == TLElement::diagram(nested, d(-2)),
            "e_[-1,1] is not δ⁻² times the doubled cup-cap",
        )?;
        Ok(())
    });
    res?;
    ensure(t < Duration::from_secs(5), format!("TL checks took {t:?}"))?;
    Ok(format!(
        "Catalan(0..=8) matches brute force; relations, Markov, e_[-1,1] exact in {t:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let h = function_algebra(&GroupTable::cyclic(2));
    let hf = fusion_from_hopf(&h, &WedderburnConfig::default()).map_err(|e| e.to_string())?;
    ensure(
        hf.datum
            .same_structure(&FusionDatum::group(&GroupTable::cyclic(2))),
        "fusion of F(Z2) is not the Z2 law",
    )?;
    let dims = depth_two_dimensions(&hf, 3);
    let mut power = h.algebra().clone();
    for k in 1..=2u32 {
        let expected = 2u64.pow(k);
        ensure(
            dims[k as usize + 1] == expected,
            format!("dim P_{} = {} ≠ {expected}", k + 1, dims[k as usize + 1]),
        )?;
        let (r, dim) = coproduct_power_check(&h, k as usize);
        ensure(r.is_ok(), format!("Δ^({k}) not a *-homomorphism:\n{r}"))?;
        ensure(dim as u64 == expected, format!("dim H^⊗{k} = {dim}"))?;
        ensure(
            power.dim() as u64 == expected,
            "iterated tensor_product has the wrong dimension",
        )?;
        ensure(
            validate_algebra(&power).is_ok(),
            "tensor power is not a *-algebra",
        )?;
        power = tensor_product(&power, h.algebra());
    }
    Ok(format!(
        "dim P_2 = 2, dim P_3 = 4 from fusion data; Δ^(1), Δ^(2) multiplicative (dims {dims:?})"
    ))
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qsk");
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let runs: Vec<Vec<String>> = vec![
        vec![
            "group".into(),
            "--table".into(),
            format!("{data}/s3.json"),
            "--check".into(),
        ],
        vec![
            "double".into(),
            "--in".into(),
            format!("{data}/s3_group_algebra.json"),
            "--irreps".into(),
            "--check".into(),
        ],
        vec![
            "double-trace".into(),
            "--in".into(),
            format!("{data}/s3_group_algebra.json"),
        ],
        vec![
            "fusion-zero".into(),
            "--in".into(),
            format!("{data}/s3_group.fusion.json"),
        ],
        vec![
            "fusion-from-hopf".into(),
            "--in".into(),
            format!("{data}/z2_function_algebra.json"),
            "--depth-two".into(),
            "2".into(),
        ],
        vec![
            "tl".into(),
            "--n".into(),
            "4".into(),
            "--verify-relations".into(),
            "--jones-word".into(),
            "-1".into(),
        ],
    ];
    for args in &runs {
        let go = || {
            Command::new(bin)
                .args(args)
                .env_remove("QSK_SEED")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (go()?, go()?);
        ensure(
            a.status.code() == Some(0),
            format!("{args:?} exited with {:?}", a.status.code()),
        )?;
        ensure(
            a.stdout == b.stdout && !a.stdout.is_empty(),
            format!("{args:?} output differs between runs"),
        )?;
    }
    Ok(format!(
        "{} subcommands byte-identical across two runs",
        runs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Hopf/Kac axioms of C[G] and F(G)", criterion_1),
        ("duality pairing and (H^op)*", criterion_2),
        ("Drinfeld double axioms, unit, star", criterion_3),
        ("double trace tracial and positive", criterion_4),
        ("irreducibles of doubles", criterion_5),
        ("zero-level algebra of S3", criterion_6),
        ("Temperley–Lieb", criterion_7),
        ("depth-two dimension law", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (res, t) = timed(f);
        match res {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{t:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
