//! Directed graph Fourier transform.
//!
//! Builds an orthonormal Fourier basis for a weighted digraph out of signed
//! eigenvectors of the Laplacian of its undirected version. Frequencies are
//! measured by directed variation, the top frequency is pinned to a
//! half-approximation of the maximum directed variation, and the sign of
//! every interior eigenvector is picked greedily so the frequencies spread
//! as evenly as possible over `[0, f̃_max]`.
//!
//! ```
//! use dgft_core::{construct, parse_digraph, DgftOptions};
//!
//! let g = parse_digraph("0 1\n1 2").unwrap();
//! let dgft = construct(&g, &DgftOptions::default()).unwrap();
//! assert_eq!(dgft.basis.len(), 3);
//! assert!((dgft.basis.frequencies[2] - 1.5).abs() < 1e-10);
//! ```

pub mod document;
pub mod eigen;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matrix;
pub mod select;
pub mod transform;
pub mod variation;

pub use document::{format_signal, parse_signal, BasisDocument};
pub use eigen::{eig_sym, eig_sym_with, spectral_radius, EigenBasis, JacobiConfig};
pub use error::{Error, GraphError, Result};
pub use generate::{random_connected_digraph, random_symmetric_digraph};
pub use graph::{parse_digraph, Digraph, Edge, GraphSignal, UndirectedView};
pub use matrix::Matrix;
pub use select::{
    assemble_basis, build_candidates, dispersion, dispersion_complement, greedy_select,
    ideal_frequencies, normalized_dispersion, oracle_select, oracle_select_with_cap, CandidatePair,
    DgftBasis, Selection, DEFAULT_ORACLE_CAP,
};
pub use transform::{
    denoise_experiment, forward, inverse, lowpass, smooth_signal, DenoiseReport, FilterSpec,
    SpectrumSignal, TrialError,
};
pub use variation::{
    approx_fmax, directed_variation, directed_variation_l1, total_variation, FmaxEstimate, Sign,
    SignedIndex,
};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DgftOptions {
    /// Search every eigenvector, not just the dominant ones, for `f̃_max`.
    pub scan_all: bool,
    pub jacobi: JacobiConfig,
}

/// Every intermediate of the construction, kept for inspection.
#[derive(Debug, Clone)]
pub struct Dgft {
    pub view: UndirectedView,
    pub eigen: EigenBasis,
    pub fmax: FmaxEstimate,
    pub candidates: Vec<CandidatePair>,
    pub selection: Selection,
    pub basis: DgftBasis,
}

/// Runs the full construction: Laplacian spectrum, `f̃_max`, candidate
/// pairs, greedy selection and basis assembly.
pub fn construct(g: &Digraph, opts: &DgftOptions) -> Result<Dgft> {
    let view = g.undirected_view();
    let eigen = eig_sym_with(&view, &opts.jacobi)?;
    let fmax = approx_fmax(g, &eigen, opts.scan_all);
    let candidates = build_candidates(g, &eigen, &fmax);
    let selection = greedy_select(&candidates, fmax.value);
    let basis = assemble_basis(g, &eigen, &fmax, &selection)?;
    Ok(Dgft {
        view,
        eigen,
        fmax,
        candidates,
        selection,
        basis,
    })
}
