//! Corpus acquisition: download pinned SuiteSparse matrices, or generate
//! the synthetic stand-in corpus locally.
//!
//! The pinned lists below hold symmetric matrices in the two size bands the
//! benchmark uses: 100-500 vertices (small, exactly solvable) and 10^4-10^5
//! vertices (large, degree-baseline only). Every downloaded file is checked
//! to be a square `symmetric` coordinate matrix; anything else is logged
//! and excluded.

use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, Context};
use flate2::read::GzDecoder;

use crate::{AppError, FetchArgs, FetchSet, FetchSource};

pub struct PinnedMatrix {
    pub group: &'static str,
    pub name: &'static str,
}

macro_rules! pinned {
    ($($group:literal / $name:literal),* $(,)?) => {
        &[$(PinnedMatrix { group: $group, name: $name }),*]
    };
}

/// Symmetric matrices with 100-500 rows.
pub const SMALL_SET: &[PinnedMatrix] = pinned![
    "HB"/"bcsstk03", "HB"/"bcsstk04", "HB"/"bcsstk05", "HB"/"bcsstk06", "HB"/"bcsstk07",
    "HB"/"bcsstk20", "HB"/"bcsstk22", "HB"/"bcsstm07",
    "HB"/"bcspwr03", "HB"/"bcspwr04", "HB"/"bcspwr05",
    "HB"/"can_144", "HB"/"can_161", "HB"/"can_187", "HB"/"can_229", "HB"/"can_256",
    "HB"/"can_268", "HB"/"can_292", "HB"/"can_445",
    "HB"/"dwt_162", "HB"/"dwt_193", "HB"/"dwt_198", "HB"/"dwt_209", "HB"/"dwt_221",
    "HB"/"dwt_234", "HB"/"dwt_245", "HB"/"dwt_307", "HB"/"dwt_310", "HB"/"dwt_346",
    "HB"/"dwt_361", "HB"/"dwt_419", "HB"/"dwt_492",
    "HB"/"nos1", "HB"/"nos4", "HB"/"nos5",
    "HB"/"plat362", "HB"/"lshp_265", "HB"/"lshp_406", "HB"/"494_bus",
    "HB"/"lund_a", "HB"/"lund_b", "HB"/"ash292",
    "Bai"/"bfwb398", "Bai"/"mhdb416",
    "Pothen"/"mesh2e1", "Pothen"/"mesh2em5", "Pothen"/"mesh3e1", "Pothen"/"mesh3em5",
    "Pothen"/"sphere3",
    "JGD_Trefethen"/"Trefethen_150", "JGD_Trefethen"/"Trefethen_200",
    "JGD_Trefethen"/"Trefethen_200b", "JGD_Trefethen"/"Trefethen_300",
    "JGD_Trefethen"/"Trefethen_500",
    "Newman"/"polbooks", "Newman"/"adjnoun", "Newman"/"football",
    "Arenas"/"celegans_metabolic", "Arenas"/"jazz",
    "Pajek"/"USAir97",
];

/// Symmetric matrices with 10^4-10^5 rows.
pub const LARGE_SET: &[PinnedMatrix] = pinned![
    "HB"/"bcsstk17", "HB"/"bcsstk18", "HB"/"bcsstk25", "HB"/"bcsstk29", "HB"/"bcsstk30",
    "HB"/"bcsstk31", "HB"/"bcsstk32",
    "Boeing"/"bcsstk35", "Boeing"/"bcsstk36", "Boeing"/"bcsstk37",
    "Boeing"/"crystk02", "Boeing"/"crystk03", "Boeing"/"crystm02", "Boeing"/"crystm03",
    "Boeing"/"msc10848", "Boeing"/"msc23052", "Boeing"/"ct20stif",
    "Pothen"/"barth5", "Pothen"/"shuttle_eddy", "Pothen"/"skirt", "Pothen"/"tandem_vtx",
    "Pothen"/"copter1", "Pothen"/"pwt", "Pothen"/"bodyy4", "Pothen"/"bodyy5", "Pothen"/"bodyy6",
    "AG-Monien"/"crack", "AG-Monien"/"fe_4elt2",
    "DIMACS10"/"delaunay_n14", "DIMACS10"/"delaunay_n15", "DIMACS10"/"delaunay_n16",
    "DIMACS10"/"fe_sphere", "DIMACS10"/"cs4", "DIMACS10"/"wing_nodal",
    "GHS_psdef"/"wathen100", "GHS_psdef"/"wathen120", "GHS_psdef"/"jnlbrng1",
    "GHS_psdef"/"obstclae", "GHS_psdef"/"torsion1", "GHS_psdef"/"minsurfo",
    "GHS_psdef"/"apache1", "GHS_psdef"/"gridgena",
    "Andrews"/"Andrews", "Schmid"/"thermal1", "Rothberg"/"cfd1",
    "UTEP"/"Dubcova1", "UTEP"/"Dubcova2",
    "Oberwolfach"/"gyro", "Oberwolfach"/"gyro_k", "Oberwolfach"/"gyro_m",
    "Oberwolfach"/"t2dah_a", "Oberwolfach"/"rail_20209",
    "Mulvey"/"finan512",
    "Cylshell"/"s3dkq4m2", "Cylshell"/"s3dkt3m2",
    "MaxPlanck"/"shallow_water1", "MaxPlanck"/"shallow_water2",
    "ACUSIM"/"Pres_Poisson", "Nasa"/"nasasrb",
    "Williams"/"cant", "Williams"/"consph", "Williams"/"pdb1HYS",
];

fn url_for(m: &PinnedMatrix) -> String {
    format!("https://sparse.tamu.edu/MM/{}/{}.tar.gz", m.group, m.name)
}

fn sets_for(set: FetchSet) -> Vec<&'static PinnedMatrix> {
    let mut list: Vec<&PinnedMatrix> = Vec::new();
    if matches!(set, FetchSet::Small | FetchSet::All) {
        list.extend(SMALL_SET.iter());
    }
    if matches!(set, FetchSet::Large | FetchSet::All) {
        list.extend(LARGE_SET.iter());
    }
    list
}

pub fn cmd_fetch(args: FetchArgs) -> Result<(), AppError> {
    match args.source {
        FetchSource::Synthetic => fetch_synthetic(&args),
        FetchSource::Suitesparse => fetch_suitesparse(&args),
    }
}

fn fetch_synthetic(args: &FetchArgs) -> Result<(), AppError> {
    let mut corpus = Vec::new();
    if matches!(args.set, FetchSet::Small | FetchSet::All) {
        corpus.extend(colorder::gen::synthetic_small_corpus());
    }
    if matches!(args.set, FetchSet::Large | FetchSet::All) {
        corpus.extend(colorder::gen::synthetic_large_corpus());
    }
    if args.list_only {
        for (name, g) in &corpus {
            println!("{name}: n={} m={}", g.n(), g.m());
        }
        return Ok(());
    }
    std::fs::create_dir_all(&args.dest)
        .with_context(|| format!("creating {}", args.dest.display()))
        .map_err(AppError::Data)?;
    for (name, g) in &corpus {
        let path = args.dest.join(format!("{name}.mtx"));
        let mut file = std::io::BufWriter::new(
            std::fs::File::create(&path)
                .with_context(|| format!("creating {}", path.display()))
                .map_err(AppError::Data)?,
        );
        g.write_matrix_market(&mut file)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(AppError::Data)?;
    }
    println!("generated {} synthetic graphs in {}", corpus.len(), args.dest.display());
    Ok(())
}

fn fetch_suitesparse(args: &FetchArgs) -> Result<(), AppError> {
    let list = sets_for(args.set);
    if args.list_only {
        for m in &list {
            println!("{}/{}: {}", m.group, m.name, url_for(m));
        }
        return Ok(());
    }
    std::fs::create_dir_all(&args.dest)
        .with_context(|| format!("creating {}", args.dest.display()))
        .map_err(AppError::Data)?;

    let agent = ureq::AgentBuilder::new()
        .timeout(Duration::from_secs(300))
        .build();
    let (mut fetched, mut present, mut excluded, mut failed) = (0u32, 0u32, 0u32, 0u32);
    for m in &list {
        let dest = args.dest.join(format!("{}.mtx", m.name));
        if dest.exists() {
            present += 1;
            continue;
        }
        match download_one(&agent, m, &dest) {
            Ok(()) => match validate_square_symmetric(&dest) {
                Ok(()) => {
                    eprintln!("fetched {}/{}", m.group, m.name);
                    fetched += 1;
                }
                Err(reason) => {
                    eprintln!("excluded {}/{}: {reason}", m.group, m.name);
                    let _ = std::fs::remove_file(&dest);
                    excluded += 1;
                }
            },
            Err(err) => {
                eprintln!("warning: {}/{} failed: {err:#}", m.group, m.name);
                failed += 1;
            }
        }
    }
    println!(
        "fetch summary: {fetched} fetched, {present} already present, {excluded} excluded, {failed} failed"
    );
    if fetched + present == 0 {
        return Err(AppError::Data(anyhow!(
            "no matrices available in {}",
            args.dest.display()
        )));
    }
    Ok(())
}

fn download_one(agent: &ureq::Agent, m: &PinnedMatrix, dest: &Path) -> anyhow::Result<()> {
    let url = url_for(m);
    let response = agent.get(&url).call().with_context(|| format!("GET {url}"))?;
    let gz = GzDecoder::new(response.into_reader());
    let mut archive = tar::Archive::new(gz);
    let wanted = format!("{}.mtx", m.name);
    for entry in archive.entries().context("reading tar archive")? {
        let mut entry = entry.context("reading tar entry")?;
        let path: PathBuf = entry.path().context("tar entry path")?.into_owned();
        if path.file_name().and_then(|f| f.to_str()) == Some(wanted.as_str()) {
            let mut out = std::fs::File::create(dest)
                .with_context(|| format!("creating {}", dest.display()))?;
            std::io::copy(&mut entry, &mut out).context("extracting matrix")?;
            return Ok(());
        }
    }
    Err(anyhow!("archive did not contain {wanted}"))
}

/// Accept only square `matrix coordinate * symmetric` files.
fn validate_square_symmetric(path: &Path) -> Result<(), String> {
    let file = std::fs::File::open(path).map_err(|e| e.to_string())?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or("empty file")?
        .map_err(|e| e.to_string())?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() < 5 || tokens[2] != "coordinate" {
        return Err("not a coordinate matrix".into());
    }
    if tokens[4] != "symmetric" {
        return Err(format!("symmetry is `{}`", tokens[4]));
    }
    for line in lines {
        let line = line.map_err(|e| e.to_string())?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let rows: u64 = it.next().and_then(|t| t.parse().ok()).ok_or("bad size line")?;
        let cols: u64 = it.next().and_then(|t| t.parse().ok()).ok_or("bad size line")?;
        if rows != cols {
            return Err(format!("rectangular ({rows}x{cols})"));
        }
        return Ok(());
    }
    Err("missing size line".into())
}
