use std::fs;
use std::path::Path;

use momentcone::basis::{Chart, FunctionSystem, Point, SystemKind};
use momentcone::catalog::{self, Space, TableRow};
use momentcone::decompose::{self, GroundSet};
use momentcone::facial::{self, PspOutcome};
use momentcone::io::{self, CertificateJson, MeasureJson, SequenceJson, SystemJson};
use momentcone::momentmap::{self, AtomicMeasure, MomentSequence};
use momentcone::{Error, Scalar};
use serde_json::json;

use crate::render::{self, csv_vector, indices, subset_table, table_vector, Failure, Output};
use crate::{Command, Opts, SpaceArg};

type Res = Result<Output, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

struct Ctx<'a> {
    o: &'a Opts,
}

impl Ctx<'_> {
    fn need<'b, T>(&self, v: &'b Option<T>, flag: &str) -> Result<&'b T, Failure> {
        v.as_ref()
            .ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
    }

    fn system(&self) -> Result<FunctionSystem, Failure> {
        Ok(io::read_system(&read(
            self.need(&self.o.system, "system")?,
        )?)?)
    }

    fn measure(&self, chart: Chart) -> Result<AtomicMeasure, Failure> {
        Ok(io::read_measure(
            &read(self.need(&self.o.measure, "measure")?)?,
            chart,
        )?)
    }

    fn sequence(&self, a: &FunctionSystem) -> Result<MomentSequence, Failure> {
        Ok(io::read_sequence(
            &read(self.need(&self.o.sequence, "sequence")?)?,
            a,
        )?)
    }

    fn ground(&self, chart: Chart) -> Result<GroundSet, Failure> {
        Ok(io::read_ground(
            &read(self.need(&self.o.ground, "ground")?)?,
            chart,
        )?)
    }

    fn points(&self, chart: Chart) -> Result<Vec<Point>, Failure> {
        if self.o.point.is_empty() {
            return Err(Failure::Usage("missing --point".into()));
        }
        self.o
            .point
            .iter()
            .map(|p| io::parse_point(chart, p).map_err(Failure::from))
            .collect()
    }

    fn budget(&self) -> u64 {
        self.o.budget.unwrap_or(catalog::DEFAULT_BUDGET)
    }

    fn n(&self) -> Result<usize, Failure> {
        self.need(&self.o.n, "n").copied()
    }

    fn d(&self) -> Result<u32, Failure> {
        self.need(&self.o.d, "d").copied()
    }
}

pub fn run(cmd: Command, opts: &Opts) -> Res {
    let c = Ctx { o: opts };
    match cmd {
        Command::Basis => basis(&c),
        Command::Moments => moments(&c),
        Command::Jacobian => jacobian(&c),
        Command::Na => na(&c),
        Command::Reduce => {
            let a = c.system()?;
            let mu = c.measure(a.chart())?;
            measure_output(&decompose::reduce(&a, &mu)?, opts.float)
        }
        Command::Signed => {
            let a = c.system()?;
            let s = c.sequence(&a)?;
            let x = c.ground(a.chart())?;
            measure_output(&decompose::signed_decompose(&a, &s, &x)?, opts.float)
        }
        Command::Member => member(&c),
        Command::MinAtoms => min_atoms(&c),
        Command::Face => face(&c),
        Command::Wset => wset(&c),
        Command::Vset => vset(&c),
        Command::Core => core(&c),
        Command::Maxmass => maxmass(&c),
        Command::Psp => psp(&c),
        Command::Table1 => table1(),
        Command::Table2 => table2(&c),
        Command::Harris => harris(&c),
        Command::Examples => examples(),
        Command::Bounds => bounds(&c),
        Command::Pythagoras => pythagoras(&c),
        Command::Flatext => flatext(&c),
    }
}

fn basis(c: &Ctx) -> Res {
    let a = c.system()?;
    let names = a.function_names();
    let mut out =
        Output::new(json!({ "system": SystemJson::from_system(&a)?, "functions": names }));
    out.line(format!("m = {}", a.size()));
    out.csv_line("index,function");
    for (i, n) in names.iter().enumerate() {
        out.line(format!("{i:>4}  {n}"));
        out.csv_line(format!("{i},{n}"));
    }
    Ok(out)
}

fn moments(c: &Ctx) -> Res {
    let a = c.system()?;
    let mu = c.measure(a.chart())?;
    let s = momentmap::moments(&a, &mu)?;
    let mut out = Output::new(SequenceJson {
        values: s.values().to_vec(),
    });
    table_vector(&mut out, &a.function_names(), s.values(), c.o.float);
    csv_vector(&mut out, s.values(), c.o.float);
    Ok(out)
}

fn jacobian(c: &Ctx) -> Res {
    let a = c.system()?;
    let mu = c.measure(a.chart())?;
    let j = momentmap::jacobian(&a, &mu)?;
    let rank = j.rank();
    let reg = momentmap::classify(&a, &mu)?;
    let mut out = Output::new(
        json!({ "rows": j.row_vectors(), "rank": rank, "m": a.size(), "regularity": reg }),
    );
    for row in j.row_vectors() {
        let cells: Vec<String> = row.iter().map(|x| render::scalar(x, c.o.float)).collect();
        out.line(cells.join("  "));
        out.csv_line(
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
    }
    out.line(format!(
        "rank {rank} of m = {} ({})",
        a.size(),
        serde_json::to_value(reg).unwrap().as_str().unwrap()
    ));
    Ok(out)
}

fn na(c: &Ctx) -> Res {
    let a = c.system()?;
    let est = momentmap::estimate_na(&a, c.o.seed, c.o.trials)?;
    let formula = match (a.kind(), a.degree()) {
        (SystemKind::AffineMonomial | SystemKind::ProjectiveMonomial, Some(d))
            if a.order() != momentcone::basis::MonomialOrder::Given =>
        {
            Some(momentmap::na_formula(a.n() as u64, d as u64))
        }
        _ => None,
    };
    let mut out = Output::new(json!({
        "k": est.k,
        "formula": formula,
        "failed_trials": est.failed_trials,
        "witness": MeasureJson::from_measure(&est.witness),
    }));
    out.line(format!("estimate  {}", est.k));
    if let Some(f) = formula {
        out.line(format!("formula   {f}"));
    }
    out.line(format!(
        "failed samples below the estimate: {}",
        est.failed_trials
    ));
    out.csv_line("k,formula");
    out.csv_line(format!(
        "{},{}",
        est.k,
        formula.map(|f| f.to_string()).unwrap_or_default()
    ));
    Ok(out)
}

fn measure_output(mu: &AtomicMeasure, float: bool) -> Res {
    let mut out = Output::new(MeasureJson::from_measure(mu));
    out.csv_line("mass,point");
    for (m, p) in mu.atoms() {
        out.line(format!(
            "{:<24} {}",
            render::scalar(m, float),
            render::point(p)
        ));
        out.csv_line(format!("{m},{}", p.to_strings().join(" ")));
    }
    out.line(format!("{} atoms", mu.len()));
    Ok(out)
}

fn member(c: &Ctx) -> Res {
    let a = c.system()?;
    let s = c.sequence(&a)?;
    let x = c.ground(a.chart())?;
    let cert = decompose::membership(&a, &x, &s)?;
    let mut out = Output::new(CertificateJson::from_certificate(&cert));
    out.csv_line("verdict");
    if let Some(mu) = &cert.measure {
        out.line("member");
        out.csv_line("member");
        for (m, p) in mu.atoms() {
            out.line(format!(
                "  {:<24} {}",
                render::scalar(m, c.o.float),
                render::point(p)
            ));
        }
    }
    if let Some(p) = &cert.separator {
        out.line("non-member; separating function nonnegative on the ground set with L_s(p) < 0:");
        out.csv_line("non-member");
        table_vector(&mut out, &a.function_names(), p, c.o.float);
        out.line(format!("L_s(p) = {}", s.riesz(p)));
    }
    Ok(out)
}

fn min_atoms(c: &Ctx) -> Res {
    let a = c.system()?;
    let s = c.sequence(&a)?;
    let x = c.ground(a.chart())?;
    let (k, mu) = decompose::min_atoms_with_witness(&a, &x, &s)?;
    let mut out = Output::new(json!({ "atoms": k, "measure": MeasureJson::from_measure(&mu) }));
    out.line(format!("minimal number of atoms: {k}"));
    for (m, p) in mu.atoms() {
        out.line(format!(
            "  {:<24} {}",
            render::scalar(m, c.o.float),
            render::point(p)
        ));
    }
    out.csv_line("atoms");
    out.csv_line(k.to_string());
    Ok(out)
}

fn facial_inputs(c: &Ctx) -> Result<(FunctionSystem, MomentSequence, GroundSet), Failure> {
    let a = c.system()?;
    let s = c.sequence(&a)?;
    let x = c.ground(a.chart())?;
    Ok((a, s, x))
}

fn face(c: &Ctx) -> Res {
    let (a, s, x) = facial_inputs(c)?;
    let f = facial::face(&a, &x, &s)?;
    let mut out = Output::new(&f);
    subset_table(&mut out, x.points(), &[("W", &f.w), ("V", &f.v)]);
    out.line(format!(
        "face dimension D = {}, gamma = {}, m = {}",
        f.face_dimension,
        f.gamma,
        a.size()
    ));
    Ok(out)
}

fn wset(c: &Ctx) -> Res {
    let (a, s, x) = facial_inputs(c)?;
    let w = facial::atom_set(&a, &x, &s)?;
    let pts: Vec<Vec<Scalar>> = w.iter().map(|&i| x.points()[i].coords().to_vec()).collect();
    let mut out = Output::new(json!({ "w": w, "points": pts }));
    subset_table(&mut out, x.points(), &[("W", &w)]);
    Ok(out)
}

fn vset(c: &Ctx) -> Res {
    let (a, s, x) = facial_inputs(c)?;
    let v = facial::v_set(&a, &x, &s)?;
    let mut out = Output::new(&v);
    subset_table(&mut out, x.points(), &[("V", &v.v)]);
    Ok(out)
}

fn core(c: &Ctx) -> Res {
    let (a, s, x) = facial_inputs(c)?;
    let cv = facial::core_variety(&a, &x, s.values())?;
    let mut out = Output::new(&cv);
    for (k, step) in cv.trace.iter().enumerate() {
        out.line(format!("V_{k}: {} points {}", step.len(), indices(step)));
    }
    out.line(format!(
        "stable after {} iterations: {}",
        cv.iterations,
        indices(&cv.set)
    ));
    out.csv_line("index,in_core");
    for i in 0..x.len() {
        out.csv_line(format!("{i},{}", cv.set.contains(&i) as u8));
    }
    Ok(out)
}

fn maxmass(c: &Ctx) -> Res {
    let (a, s, x) = facial_inputs(c)?;
    let pts = c.points(a.chart())?;
    let [p] = pts.as_slice() else {
        return Err(Failure::Usage("maxmass needs exactly one --point".into()));
    };
    let r = facial::max_mass(&a, &x, &s, p)?;
    let mut out = Output::new(&r);
    let f = c.o.float;
    out.line(format!("rho   {}", render::scalar(&r.rho, f)));
    out.line(format!("kappa {}", render::scalar(&r.kappa, f)));
    out.line(format!("x in W(residual): {}", r.x_in_w_residual));
    out.line(format!("x in V(residual): {}", r.x_in_v_residual));
    out.csv_line("rho,kappa,x_in_w_residual,x_in_v_residual");
    out.csv_line(format!(
        "{},{},{},{}",
        r.rho, r.kappa, r.x_in_w_residual, r.x_in_v_residual
    ));
    Ok(out)
}

fn psp(c: &Ctx) -> Res {
    let a = c.system()?;
    let x = c.ground(a.chart())?;
    let pts = c.points(a.chart())?;
    let r = facial::psp_check(&a, &x, &pts)?;
    let mut out = Output::new(&r);
    match &r {
        PspOutcome::Feasible { functionals } => {
            out.line(format!(
                "separating functions exist for all {} points",
                functionals.len()
            ));
            out.csv_line("status");
            out.csv_line("feasible");
        }
        PspOutcome::Infeasible { index, .. } => {
            out.line(format!(
                "no separating function for point {index} ({})",
                render::point(&pts[*index])
            ));
            out.csv_line("status,index");
            out.csv_line(format!("infeasible,{index}"));
        }
    }
    Ok(out)
}

fn table1() -> Res {
    let ranks = catalog::table1()?;
    let inc = catalog::increments(&ranks);
    let mut out = Output::new(json!({ "ranks": ranks, "increments": inc }));
    out.line(format!("{:>4} {:>5} {:>9}", "k", "rank", "increase"));
    out.csv_line("k,rank,increase");
    for (k, (r, i)) in ranks.iter().zip(&inc).enumerate() {
        out.line(format!("{:>4} {r:>5} {:>9}", k + 1, format!("+{i}")));
        out.csv_line(format!("{},{r},{i}", k + 1));
    }
    Ok(out)
}

fn table2(c: &Ctx) -> Res {
    let budget = c.budget();
    let primed = c.o.primed;
    let cells: Vec<(usize, u32)> = match (c.o.n, c.o.d) {
        (Some(n), Some(d)) => vec![(n, d)],
        (n, d) => {
            let side = |d: u32| if primed { d + 1 } else { d } as u128;
            let ns: Vec<usize> = n.map_or((3..=10).collect(), |n| vec![n]);
            let mut v = Vec::new();
            for n in ns {
                match d {
                    Some(d) => v.push((n, d)),
                    None => {
                        let mut d = 1;
                        while side(d).pow(n as u32) <= budget as u128 {
                            v.push((n, d));
                            d += 1;
                        }
                    }
                }
            }
            v
        }
    };
    let single = cells.len() == 1;
    let mut rows: Vec<TableRow> = Vec::new();
    let mut out_table = String::new();
    let mut out_csv = String::new();
    out_table.push_str(&format!(
        "{:>3} {:>3} {:>6} {:>6} {:>6} {:>6} {:>6}\n",
        "n", "d", "m", "|Z|", "r", "w%", "z%"
    ));
    for (n, d) in cells {
        match catalog::table2(n, d, primed, budget) {
            Ok(r) => {
                out_table.push_str(&format!(
                    "{:>3} {:>3} {:>6} {:>6} {:>6} {:>6} {:>6}\n",
                    r.n,
                    r.d,
                    r.m,
                    r.zeros,
                    r.rank,
                    r.w_percent(),
                    r.z_percent()
                ));
                out_csv.push_str(&r.csv());
                out_csv.push('\n');
                rows.push(r);
            }
            Err(Error::BudgetExceeded { .. }) if !single => {
                let m = momentcone::basis::binomial(n as u64 + 2 * d as u64, n as u64);
                out_table.push_str(&format!(
                    "{n:>3} {d:>3} {m:>6} {:>6} {:>6} {:>6} {:>6}\n",
                    "--", "--", "--", "--"
                ));
                out_csv.push_str(&format!("{n},{d},{m},--,--,--,--\n"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let json: Vec<_> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "d": r.d, "primed": r.primed, "m": r.m, "zeros": r.zeros, "rank": r.rank,
            "w": format!("{}/{}", r.rank, r.m), "z": format!("{}/{}", r.rank, r.zeros),
            "w_percent": r.w_percent(), "z_percent": r.z_percent() }))
        .collect();
    let mut out = Output::new(json);
    out.table = out_table;
    out.csv = out_csv;
    Ok(out)
}

fn harris(c: &Ctx) -> Res {
    let h = catalog::harris();
    let names = h.system.function_names();
    let values: Vec<Scalar> = h
        .zeros
        .iter()
        .map(|z| h.eval(z))
        .collect::<Result<_, _>>()?;
    let zeros: Vec<_> = h
        .zeros
        .iter()
        .zip(&values)
        .map(|(z, v)| json!({ "point": z.coords(), "value": v }))
        .collect();
    let mut out = Output::new(json!({
        "name": h.name,
        "system": SystemJson::from_system(&h.system)?,
        "coefficients": h.coefficients,
        "zeros": zeros,
    }));
    out.line("nonzero coefficients:");
    for (n, v) in names.iter().zip(&h.coefficients) {
        if !v.is_zero() {
            out.line(format!("  {:>4}  {n}", v.to_string()));
        }
    }
    out.line("zeros:");
    out.csv_line("index,point,value");
    for (i, (z, v)) in h.zeros.iter().zip(&values).enumerate() {
        out.line(format!(
            "  z{:<3} {:<36} h = {}",
            i + 1,
            render::point(z),
            render::scalar(v, c.o.float)
        ));
        out.csv_line(format!("{},{},{v}", i + 1, z.to_strings().join(" ")));
    }
    Ok(out)
}

fn examples() -> Res {
    let mut rows = Vec::new();
    let mut out_rows = Vec::new();
    for ex in catalog::example_systems() {
        let (rank, kernel) = if ex.points.is_empty() {
            (None, None)
        } else {
            (
                Some(ex.jacobian()?.rank()),
                Some(ex.singular_functionals()?.len()),
            )
        };
        rows.push(json!({
            "name": ex.name,
            "m": ex.system.size(),
            "jacobian_rank": rank,
            "singular_functionals": kernel,
            "cara_equals_na": ex.cara_equals_na,
            "interior_iff_regular": ex.interior_iff_regular,
        }));
        out_rows.push((
            ex.name,
            ex.system.size(),
            rank,
            ex.cara_equals_na,
            ex.interior_iff_regular,
        ));
    }
    let mut out = Output::new(rows);
    out.line(format!(
        "{:<22} {:>3} {:>5} {:>10} {:>22}",
        "system", "m", "rank", "C_A = N_A", "interior <=> regular"
    ));
    out.csv_line("system,m,rank,cara_equals_na,interior_iff_regular");
    for (name, m, rank, a, b) in out_rows {
        let r = rank.map(|r| r.to_string()).unwrap_or_else(|| "-".into());
        out.line(format!("{name:<22} {m:>3} {r:>5} {a:>10} {b:>22}"));
        out.csv_line(format!("{name},{m},{r},{a},{b}"));
    }
    Ok(out)
}

fn bounds(c: &Ctx) -> Res {
    let space = match c.need(&c.o.space, "space")? {
        SpaceArg::Projective => Space::Projective,
        SpaceArg::Affine => Space::Affine,
        SpaceArg::Cube => Space::Cube,
        SpaceArg::Line => Space::Line,
    };
    let b = catalog::cara_bounds(c.n()?, c.d()?, space, c.budget())?;
    let mut out = Output::new(&b);
    out.line(format!("m = {}", b.m));
    out.csv_line("kind,value,source");
    for x in &b.bounds {
        let kind = serde_json::to_value(x.kind)
            .unwrap()
            .as_str()
            .unwrap()
            .to_string();
        out.line(format!("{kind:<6} {:>8}  {}", x.value, x.source));
        out.csv_line(format!("{kind},{},{}", x.value, x.source));
    }
    let show = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    out.line(format!(
        "best: {} <= C_A <= {}",
        show(b.lower),
        show(b.upper)
    ));
    Ok(out)
}

fn pythagoras(c: &Ctx) -> Res {
    let a = c.system()?;
    let dim = catalog::square_dimension(&a)?;
    let bound = catalog::pythagoras_lower(&a)?;
    let mut out =
        Output::new(json!({ "m": a.size(), "square_dimension": dim, "lower_bound": bound }));
    out.line(format!(
        "m = {}, dim lin A^2 = {dim}, Pythagoras number >= {bound}",
        a.size()
    ));
    out.csv_line("m,square_dimension,lower_bound");
    out.csv_line(format!("{},{dim},{bound}", a.size()));
    Ok(out)
}

fn flatext(c: &Ctx) -> Res {
    let atoms = *c.need(&c.o.atoms, "atoms")?;
    let d = c.d()?;
    if d % 2 != 0 {
        return Err(Failure::Domain(Error::InvalidInput(
            "flatext needs an even degree".into(),
        )));
    }
    let f = catalog::flat_extension_counts(c.n()? as u64, d / 2, atoms);
    let mut out = Output::new(&f);
    out.line(format!("moment matrix size {}", f.matrix_size));
    out.line(format!(
        "moments added up to degree {}: {}",
        f.lower_degree, f.lower_added
    ));
    out.line(format!(
        "moments added up to degree {}: {}",
        f.upper_degree, f.upper_added
    ));
    out.csv_line("matrix_size,lower_degree,lower_added,upper_degree,upper_added");
    out.csv_line(format!(
        "{},{},{},{},{}",
        f.matrix_size, f.lower_degree, f.lower_added, f.upper_degree, f.upper_added
    ));
    Ok(out)
}
