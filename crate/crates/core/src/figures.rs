//! Data series behind the capacity figures, as in-memory CSV tables.

use rayon::prelude::*;

use crate::capacity::{
    max_diag_coherent_info, q_bounds, q_gamma1_one, q_plane_gamma1_zero, q_plane_gamma2_zero,
    q_plane_sum_one, q_single_decay, qe, qubit_adc_capacity,
};
use crate::channel::RateVector3;
use crate::sweep::{format_g9, worker_count};

/// Figure ids with data.
pub const FIGURE_IDS: [u32; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];

const CURVE_STEP: f64 = 0.01;
const SURFACE_STEP: f64 = 0.05;

/// One CSV file: a header and rows of optional numbers (empty cells mark
/// points outside the CPTP region).
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl FigureTable {
    fn new(name: &str, header: &[&str], rows: Vec<Vec<Option<f64>>>) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(format_g9).unwrap_or_default())
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn axis(step: f64) -> Vec<f64> {
    let n = (1.0 / step).round() as usize;
    (0..=n).map(|k| ((k as f64 * step) * 1e12).round() / 1e12).collect()
}

fn par_rows<T, F>(points: Vec<T>, f: F) -> Vec<Vec<Option<f64>>>
where
    T: Send + Sync,
    F: Fn(&T) -> Vec<Option<f64>> + Send + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .expect("thread pool");
    pool.install(|| points.par_iter().map(f).collect())
}

fn square() -> Vec<(f64, f64)> {
    let ax = axis(SURFACE_STEP);
    ax.iter()
        .flat_map(|&a| ax.iter().map(move |&b| (a, b)))
        .collect()
}

/// Value on the surface, or an empty cell outside the CPTP region.
fn cell<E>(r: std::result::Result<crate::capacity::CapacityEstimate, E>) -> Option<f64> {
    r.ok().map(|e| e.lower)
}

fn figure2() -> Vec<FigureTable> {
    let pts = axis(CURVE_STEP);
    let ests: Vec<_> = pts
        .iter()
        .map(|&g1| q_single_decay(g1).expect("γ1 in range"))
        .collect();
    let capacity = pts
        .iter()
        .zip(&ests)
        .map(|(&g1, e)| vec![Some(g1), Some(e.lower)])
        .collect();
    let populations = pts
        .iter()
        .zip(&ests)
        .map(|(&g1, e)| {
            let p = e.argmax.expect("argmax recorded");
            vec![Some(g1), Some(p.p0), Some(p.p1), Some(p.p2)]
        })
        .collect();
    vec![
        FigureTable::new("fig2_capacity", &["gamma1", "q"], capacity),
        FigureTable::new("fig2_populations", &["gamma1", "p0", "p1", "p2"], populations),
    ]
}

fn figure3() -> Vec<FigureTable> {
    let surface = par_rows(square(), |&(g2, g3)| {
        vec![Some(g2), Some(g3), cell(q_gamma1_one(g2, g3))]
    });
    let inset = axis(CURVE_STEP)
        .into_iter()
        .map(|g3| {
            vec![
                Some(g3),
                cell(q_gamma1_one(0.0, g3)),
                cell(qubit_adc_capacity(g3)),
            ]
        })
        .collect();
    vec![
        FigureTable::new("fig3_surface", &["gamma2", "gamma3", "q"], surface),
        FigureTable::new("fig3_inset", &["gamma3", "q", "qubit_adc"], inset),
    ]
}

fn figure4() -> Vec<FigureTable> {
    let rows = axis(CURVE_STEP)
        .into_iter()
        .map(|g2| vec![Some(g2), cell(q_gamma1_one(g2, 0.0))])
        .collect();
    vec![FigureTable::new("fig4_edge", &["gamma2", "q"], rows)]
}

fn figure5() -> Vec<FigureTable> {
    let rows = par_rows(square(), |&(g1, g3)| {
        vec![Some(g1), Some(g3), cell(q_plane_gamma2_zero(g1, g3))]
    });
    vec![FigureTable::new("fig5_surface", &["gamma1", "gamma3", "q"], rows)]
}

fn figure6() -> Vec<FigureTable> {
    let ax = axis(SURFACE_STEP);
    let mut rows = Vec::new();
    for &g1 in &ax {
        for &g2 in &ax {
            for &g3 in &ax {
                let zero = RateVector3::new(g1, g2, g3)
                    .ok()
                    .map(|g| f64::from(u8::from(g.g1() >= 0.5 && g.g3() >= 0.5)));
                rows.push(vec![Some(g1), Some(g2), Some(g3), zero]);
            }
        }
    }
    vec![FigureTable::new(
        "fig6_zero_region",
        &["gamma1", "gamma2", "gamma3", "zero"],
        rows,
    )]
}

fn figure7() -> Vec<FigureTable> {
    let rows = par_rows(square(), |&(g2, g3)| {
        vec![Some(g2), Some(g3), cell(q_plane_gamma1_zero(g2, g3))]
    });
    vec![FigureTable::new("fig7_surface", &["gamma2", "gamma3", "q"], rows)]
}

fn figure8() -> Vec<FigureTable> {
    let rows = par_rows(square(), |&(g1, g2)| {
        let lower = RateVector3::new(g1, g2, 0.0)
            .ok()
            .map(|g| max_diag_coherent_info(&g).lower);
        vec![Some(g1), Some(g2), lower]
    });
    vec![FigureTable::new(
        "fig8_surface",
        &["gamma1", "gamma2", "q_lower"],
        rows,
    )]
}

fn figure9() -> Vec<FigureTable> {
    let rows = par_rows(square(), |&(g1, g2)| {
        let q = RateVector3::new(g1, g2, 1.0 - g2)
            .ok()
            .map(|g| q_bounds(&g).lower);
        vec![Some(g1), Some(g2), Some(1.0 - g2), q]
    });
    let profile = axis(CURVE_STEP)
        .into_iter()
        .map(|g1| vec![Some(g1), cell(q_plane_sum_one(g1))])
        .collect();
    vec![
        FigureTable::new("fig9_surface", &["gamma1", "gamma2", "gamma3", "q"], rows),
        FigureTable::new("fig9_profile", &["gamma1", "q"], profile),
    ]
}

fn qe_cell(g1: f64, g2: f64, g3: f64) -> Option<f64> {
    RateVector3::new(g1, g2, g3).ok().map(|g| qe(&g).lower)
}

fn figure10() -> Vec<FigureTable> {
    let curve = par_rows(axis(CURVE_STEP), |&g1| vec![Some(g1), qe_cell(g1, 0.0, 0.0)]);
    let g3_zero = par_rows(square(), |&(g1, g2)| {
        vec![Some(g1), Some(g2), qe_cell(g1, g2, 0.0)]
    });
    let g2_zero = par_rows(square(), |&(g1, g3)| {
        vec![Some(g1), Some(g3), qe_cell(g1, 0.0, g3)]
    });
    let g1_zero = par_rows(square(), |&(g2, g3)| {
        vec![Some(g2), Some(g3), qe_cell(0.0, g2, g3)]
    });
    vec![
        FigureTable::new("fig10_curve", &["gamma1", "qe"], curve),
        FigureTable::new("fig10_gamma3_zero", &["gamma1", "gamma2", "qe"], g3_zero),
        FigureTable::new("fig10_gamma2_zero", &["gamma1", "gamma3", "qe"], g2_zero),
        FigureTable::new("fig10_gamma1_zero", &["gamma2", "gamma3", "qe"], g1_zero),
    ]
}

/// Tables for figure `id`, or `None` for an unknown id.
pub fn figure(id: u32) -> Option<Vec<FigureTable>> {
    Some(match id {
        2 => figure2(),
        3 => figure3(),
        4 => figure4(),
        5 => figure5(),
        6 => figure6(),
        7 => figure7(),
        8 => figure8(),
        9 => figure9(),
        10 => figure10(),
        _ => return None,
    })
}
