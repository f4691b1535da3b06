use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{CodeInterner, GroupElement, GroupSpec};
use crate::walk::measure::StepDistribution;

/// Exact n-th convolution power of a finite-support measure, held as an
/// interned-id table. Masses accumulate in id order, so the table is
/// bit-reproducible.
pub struct ConvolutionTable {
    spec: Arc<GroupSpec>,
    pub n: u32,
    interner: CodeInterner,
    masses: Vec<f64>,
}

impl ConvolutionTable {
    pub fn support_size(&self) -> usize {
        self.masses.len()
    }

    pub fn mass_of(&self, g: &GroupElement) -> Option<f64> {
        let code = g.encode();
        self.interner.get(&code).map(|id| self.masses[id as usize])
    }

    pub fn total_mass(&self) -> f64 {
        crate::util::pairwise_sum(&self.masses)
    }

    /// Expected word length L(mu^{*n}).
    pub fn expected_length(&self) -> f64 {
        let terms: Vec<f64> = (0..self.masses.len())
            .map(|id| {
                let g = self.spec.decode(self.interner.code(id as u32)).unwrap();
                self.masses[id] * self.spec.word_length(&g) as f64
            })
            .collect();
        crate::util::pairwise_sum(&terms)
    }

    /// Shannon entropy H(mu^{*n}) = -sum mu(g) log mu(g).
    pub fn entropy(&self) -> f64 {
        let terms: Vec<f64> = self
            .masses
            .iter()
            .map(|&m| if m > 0.0 { -m * m.ln() } else { 0.0 })
            .collect();
        crate::util::pairwise_sum(&terms)
    }

    /// Support elements with masses, in id (discovery) order.
    pub fn entries(&self) -> impl Iterator<Item = (GroupElement, f64)> + '_ {
        (0..self.masses.len()).map(move |id| {
            (
                self.spec.decode(self.interner.code(id as u32)).unwrap(),
                self.masses[id],
            )
        })
    }

    /// Exact convolution of two tables (quadratic; intended for the
    /// semigroup-property checks at small n).
    pub fn convolve(&self, other: &ConvolutionTable) -> Result<ConvolutionTable> {
        if self.spec.token != other.spec.token {
            return Err(Error::Mismatch("convolving tables over different specs".into()));
        }
        let mut interner = CodeInterner::new();
        let mut masses: Vec<f64> = Vec::new();
        let mut code = Vec::new();
        for (a, pa) in self.entries() {
            for (b, pb) in other.entries() {
                let prod = self.spec.multiply(&a, &b)?;
                code.clear();
                prod.encode_into(&mut code);
                let id = interner.intern(&code) as usize;
                if id == masses.len() {
                    masses.push(0.0);
                }
                masses[id] += pa * pb;
            }
        }
        Ok(ConvolutionTable {
            spec: Arc::clone(&self.spec),
            n: self.n + other.n,
            interner,
            masses,
        })
    }

    /// Total-variation distance to another table.
    pub fn tv_distance(&self, other: &ConvolutionTable) -> f64 {
        let mut acc = 0.0;
        for (g, p) in self.entries() {
            let q = other.mass_of(&g).unwrap_or(0.0);
            acc += (p - q).abs();
        }
        for (g, q) in other.entries() {
            if self.mass_of(&g).is_none() {
                acc += q;
            }
        }
        acc / 2.0
    }
}

/// Per-power summary emitted while scanning convolution powers.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConvolutionRow {
    pub n: u32,
    pub support: u64,
    pub entropy: f64,
    pub expected_length: f64,
    pub total_mass: f64,
}

/// Computes mu^{*n} exactly by n successive one-step convolutions. The
/// projected support is capped; on overflow the error names the largest
/// feasible power reached.
pub fn exact_convolution(
    mu: &StepDistribution,
    n: u32,
    support_cap: u64,
) -> Result<ConvolutionTable> {
    Ok(convolution_scan(mu, n, support_cap)?.1)
}

/// Scans mu^{*1} .. mu^{*n}, recording entropy/length per power and keeping
/// only the last table.
pub fn convolution_scan(
    mu: &StepDistribution,
    n: u32,
    support_cap: u64,
) -> Result<(Vec<ConvolutionRow>, ConvolutionTable)> {
    let mut tables = convolution_prefix_impl(mu, n, support_cap, false)?;
    let rows = tables.0;
    Ok((rows, tables.1.pop().unwrap()))
}

/// All powers mu^{*1} .. mu^{*n}; used by the semigroup-property tests.
pub fn convolution_prefix(
    mu: &StepDistribution,
    n: u32,
    support_cap: u64,
) -> Result<Vec<ConvolutionTable>> {
    Ok(convolution_prefix_impl(mu, n, support_cap, true)?.1)
}

fn convolution_prefix_impl(
    mu: &StepDistribution,
    n: u32,
    support_cap: u64,
    keep_all: bool,
) -> Result<(Vec<ConvolutionRow>, Vec<ConvolutionTable>)> {
    if n < 1 {
        return Err(Error::Precondition("convolution power must be >= 1".into()));
    }
    let spec = Arc::clone(mu.spec());
    let mut rows: Vec<ConvolutionRow> = Vec::with_capacity(n as usize);
    let mut out: Vec<ConvolutionTable> = Vec::with_capacity(n as usize);

    // step 1: the measure itself
    let mut interner = CodeInterner::new();
    let mut masses = Vec::new();
    let mut code = Vec::new();
    for (g, p) in mu.support() {
        code.clear();
        g.encode_into(&mut code);
        let id = interner.intern(&code) as usize;
        debug_assert_eq!(id, masses.len());
        masses.push(*p);
    }
    let first = ConvolutionTable {
        spec: Arc::clone(&spec),
        n: 1,
        interner,
        masses,
    };
    rows.push(ConvolutionRow {
        n: 1,
        support: first.support_size() as u64,
        entropy: first.entropy(),
        expected_length: first.expected_length(),
        total_mass: first.total_mass(),
    });
    out.push(first);

    for power in 2..=n {
        let prev = out.last().unwrap();
        let mut interner = CodeInterner::new();
        let mut masses: Vec<f64> = Vec::new();
        let mut code = Vec::new();
        for id in 0..prev.masses.len() {
            let p = prev.masses[id];
            let g = spec.decode(prev.interner.code(id as u32)).unwrap();
            for (s, ps) in mu.support() {
                let prod = spec.multiply(&g, s)?;
                code.clear();
                prod.encode_into(&mut code);
                let tid = interner.intern(&code) as usize;
                if tid == masses.len() {
                    masses.push(0.0);
                    if masses.len() as u64 > support_cap {
                        return Err(Error::Budget {
                            what: "convolution support",
                            needed: masses.len() as u64,
                            cap: support_cap,
                            largest_feasible: Some(power as u64 - 1),
                        });
                    }
                }
                masses[tid] += p * ps;
            }
        }
        let table = ConvolutionTable {
            spec: Arc::clone(&spec),
            n: power,
            interner,
            masses,
        };
        rows.push(ConvolutionRow {
            n: power,
            support: table.support_size() as u64,
            entropy: table.entropy(),
            expected_length: table.expected_length(),
            total_mass: table.total_mass(),
        });
        if !keep_all {
            out.clear();
        }
        out.push(table);
    }
    Ok((rows, out))
}
