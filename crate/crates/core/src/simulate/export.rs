//! CSV and plot-script output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::Result;

use crate::polysys::VectorField3;

use super::{integrate, reversed, DisplacementSample, Real, State, Tolerances, Trajectory};

pub const TRAJECTORY_HEADER: &str = "t,u,v,w";

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `t,u,v,w` rows with 17 significant digits.
pub fn write_trajectory_csv<T: Real, W: Write>(tr: &Trajectory<T>, mut out: W) -> Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for (t, s) in tr.times.iter().zip(&tr.states) {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", f64_of(*t), f64_of(s[0]), f64_of(s[1]), f64_of(s[2]))?;
    }
    Ok(())
}

/// One `t,<var>` file per state variable, named `<stem>_<var>.csv`.
pub fn write_component_series<T: Real>(tr: &Trajectory<T>, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (i, var) in ["u", "v", "w"].iter().enumerate() {
        let path = dir.join(format!("{stem}_{var}.csv"));
        let mut out = BufWriter::new(File::create(&path)?);
        writeln!(out, "t,{var}")?;
        for (t, s) in tr.times.iter().zip(&tr.states) {
            writeln!(out, "{:.16e},{:.16e}", f64_of(*t), f64_of(s[i]))?;
        }
        out.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

/// Two-column `rho0,dbar` table.
pub fn write_displacement_csv<T: Real, W: Write>(samples: &[DisplacementSample<T>], mut out: W) -> Result<()> {
    writeln!(out, "rho0,dbar")?;
    for s in samples {
        writeln!(out, "{:.16e},{:.16e}", f64_of(s.rho0), f64_of(s.value))?;
    }
    Ok(())
}

/// Matplotlib script drawing the 3D orbit and the three time series of a
/// trajectory CSV.
pub fn plot_script(csv_name: &str, title: &str) -> String {
    format!(
        r#"import csv
import matplotlib.pyplot as plt

with open({csv_name:?}) as fh:
    rows = [list(map(float, r)) for r in list(csv.reader(fh))[1:]]
t, u, v, w = (list(c) for c in zip(*rows))

fig = plt.figure(figsize=(11, 4))
ax = fig.add_subplot(1, 2, 1, projection="3d")
ax.plot(u, v, w, lw=0.6)
ax.set_xlabel("u")
ax.set_ylabel("v")
ax.set_zlabel("w")
ax.set_title({title:?})
for i, (name, series) in enumerate([("u", u), ("v", v), ("w", w)]):
    sub = fig.add_subplot(3, 2, 2 * i + 2)
    sub.plot(t, series, lw=0.6)
    sub.set_ylabel(name)
sub.set_xlabel("t")
fig.tight_layout()
plt.show()
"#
    )
}

pub fn write_plot_script(path: &Path, csv_name: &str, title: &str) -> Result<()> {
    std::fs::write(path, plot_script(csv_name, title))?;
    Ok(())
}

/// Matplotlib script overlaying several trajectory CSVs in one 3D view.
pub fn orbit_set_script(csv_names: &[String], title: &str) -> String {
    format!(
        r#"import csv
import matplotlib.pyplot as plt

files = {csv_names:?}
ax = plt.figure(figsize=(6, 6)).add_subplot(projection="3d")
for name in files:
    with open(name) as fh:
        rows = [list(map(float, r)) for r in list(csv.reader(fh))[1:]]
    t, u, v, w = zip(*rows)
    ax.plot(u, v, w, lw=0.6)
    ax.scatter([u[0]], [v[0]], [w[0]], s=8)
ax.set_xlabel("u")
ax.set_ylabel("v")
ax.set_zlabel("w")
ax.set_title({title:?})
plt.show()
"#
    )
}

#[derive(Clone, Debug)]
pub struct OrbitSetFiles {
    pub csvs: Vec<PathBuf>,
    pub script: PathBuf,
}

/// Integrate every start over `[0, t_end]` (in reversed time when
/// `backward`), writing `<stem>_<i>.csv` files and `<stem>.py`.
#[allow(clippy::too_many_arguments)]
pub fn write_orbit_set<T: Real>(
    f: &VectorField3<T>,
    starts: &[State<T>],
    t_end: T,
    backward: bool,
    tol: Tolerances,
    dir: &Path,
    stem: &str,
    title: &str,
) -> Result<OrbitSetFiles> {
    let g = if backward { reversed(f) } else { f.clone() };
    let mut csvs = Vec::new();
    for (i, x0) in starts.iter().enumerate() {
        let tr = integrate(&g, *x0, (T::zero(), t_end), tol)?;
        let path = dir.join(format!("{stem}_{i}.csv"));
        write_trajectory_csv(&tr, BufWriter::new(File::create(&path)?))?;
        csvs.push(path);
    }
    let names: Vec<String> =
        csvs.iter().map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()).collect();
    let script = dir.join(format!("{stem}.py"));
    std::fs::write(&script, orbit_set_script(&names, title))?;
    Ok(OrbitSetFiles { csvs, script })
}
