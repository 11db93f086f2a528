//! Lattice figures on the square `0 ≤ x, y ≤ N`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use branching_core::branching::restrict_module;
use branching_core::catalog::{h_summand_table, ktypes, ModuleDescriptor};
use branching_core::decomposer::{decompose, pseudo_dual_grid, Family};
use branching_core::weights::{TableKey, U2Irrep, U2Variant, Weight};
use branching_core::Result;

pub struct Figure {
    pub name: &'static str,
    title: String,
    n: i64,
    cells: BTreeMap<Weight, u64>,
    /// Draw a slope-one ray from every marked cell (SVG only).
    rays: bool,
}

const CELL: i64 = 24;

fn symbol(m: u64) -> char {
    match m {
        0 => '.',
        1..=9 => char::from(b'0' + m as u8),
        10..=35 => char::from(b'a' + (m - 10) as u8),
        _ => '*',
    }
}

impl Figure {
    fn new(name: &'static str, title: &str, n: u32, cells: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        let n = n as i64;
        Figure {
            name,
            title: title.to_owned(),
            n,
            cells: cells
                .into_iter()
                .filter(|(w, m)| *m > 0 && (0..=n).contains(&w.x) && (0..=n).contains(&w.y))
                .collect(),
            rays: false,
        }
    }

    fn with_rays(mut self) -> Self {
        self.rays = true;
        self
    }

    fn get(&self, x: i64, y: i64) -> u64 {
        self.cells.get(&Weight::new(x, y)).copied().unwrap_or(0)
    }

    /// Rows `y = N, …, 0`; columns `x = 0, …, N`.
    pub fn ascii(&self) -> String {
        let mut s = format!("# {}: {} (0 <= x,y <= {})\n", self.name, self.title, self.n);
        for y in (0..=self.n).rev() {
            let row: Vec<String> = (0..=self.n).map(|x| symbol(self.get(x, y)).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn svg(&self) -> String {
        let side = (self.n + 2) * CELL;
        let px = |x: i64| (x + 1) * CELL;
        let py = |y: i64| side - (y + 1) * CELL;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
        );
        let _ = writeln!(s, "<title>{}: {}</title>", self.name, self.title);
        let _ = writeln!(s, r#"<rect width="{side}" height="{side}" fill="white"/>"#);
        let (o, end) = (px(0), px(self.n));
        let _ = writeln!(
            s,
            r#"<path d="M{o} {} H{end} M{o} {} V{}" stroke="black" stroke-width="1"/>"#,
            py(0),
            py(0),
            py(self.n)
        );
        for y in 0..=self.n {
            for x in 0..=self.n {
                let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="1.5" fill="#bbb"/>"##, px(x), py(y));
            }
        }
        if self.rays {
            for w in self.cells.keys() {
                let t = self.n - w.x.max(w.y);
                let _ = writeln!(
                    s,
                    r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#36c" stroke-width="1"/>"##,
                    px(w.x),
                    py(w.y),
                    px(w.x + t),
                    py(w.y + t)
                );
            }
        }
        for (w, m) in &self.cells {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="8" fill="black"/>"#, px(w.x), py(w.y));
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="11" text-anchor="middle" fill="white">{}</text>"#,
                px(w.x),
                py(w.y) + 4,
                m
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn marks<K: TableKey>(keys: impl IntoIterator<Item = K>) -> Vec<(Weight, u64)> {
    keys.into_iter().map(|k| (k.hw(), 1)).collect()
}

pub fn build(n: u32) -> Result<Vec<Figure>> {
    let aq = ModuleDescriptor::AqModule(0);
    let restricted = restrict_module(&aq, U2Variant::V1, n)?.table;
    let sp = decompose(&restricted, Family::SpCones)?;
    let gl = decompose(&restricted, Family::GlRays)?;
    let grid = pseudo_dual_grid(n.max(6))?;
    let sp0 = h_summand_table(&ModuleDescriptor::SpSummand(0), n)?;
    let ray33 = h_summand_table(&ModuleDescriptor::GlRay(U2Irrep::v1(3, 3)), n)?;
    let table_cells = |t: &branching_core::weights::MultiplicityTable<U2Irrep>| -> Vec<(Weight, u64)> {
        t.iter().map(|(k, m)| (k.hw(), *m)).collect()
    };

    Ok(vec![
        Figure::new(
            "fig1",
            "K-types of A_q (highest weights a e1 + b e2)",
            n,
            ktypes(&aq, n)?.iter().map(|(w, m)| (*w, *m)),
        ),
        Figure::new(
            "fig2",
            "multiplicities of A_q restricted to K^{H1} (min(x,y)-2 on even keys)",
            n,
            table_cells(&restricted),
        ),
        Figure::new("fig3", "K^{H1}-types of the summand sp:0", n, table_cells(&sp0)),
        Figure::new(
            "fig4",
            "minimal types of the symplectic summands of A_q",
            n,
            sp.summands.iter().map(|s| (s.minimal_type, s.mult)),
        ),
        Figure::new(
            "fig5",
            "minimal types of the GL summands of A_q; each heads a slope-1 ray",
            n,
            gl.summands.iter().map(|s| (s.minimal_type, s.mult)),
        )
        .with_rays(),
        Figure::new("fig6", "K^{H1'}-types of the minimal GL summand glray:3,3", n, table_cells(&ray33)),
        Figure::new(
            "fig7",
            "symplectic summands headed by the types of glray:3,3",
            n,
            marks(grid.sp_bijection.iter().map(|p| U2Irrep::v1(p.ktype.x, p.ktype.y))),
        ),
        Figure::new("fig8", "K^{H1}-types of the minimal symplectic summand sp:0", n, table_cells(&sp0)),
        Figure::new(
            "fig9",
            "GL summands headed by the types of sp:0",
            n,
            marks(grid.gl_bijection.iter().map(|p| U2Irrep::v1(p.ktype.x, p.ktype.y))),
        )
        .with_rays(),
    ])
}
