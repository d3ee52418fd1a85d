//! Exact combinatorial Schubert calculus for the affine Grassmannian of the
//! symplectic group `Sp(2n)`.
//!
//! The crate builds the affine Weyl group of type `C~n` up to a configurable
//! length cap, the nilCoxeter and nilHecke algebras over it, the Schubert
//! elements of the affine Fomin-Stanley subalgebra with their Pieri rule and
//! coproduct, and the symmetric-function side: Schur P/Q functions, the
//! affine Stanley functions `Q^(n)_w`, and their duals `P^(n)_w`. All
//! arithmetic is exact (machine integers with overflow checks, rationals in
//! the linear solvers).

pub mod cartan;
pub mod coproduct;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod nilcoxeter;
pub mod nilhecke;
pub mod par;
pub mod schubert;
pub mod symfunc;
pub mod verify;
pub mod weyl;
pub mod words;
pub mod zee;

pub use error::{Error, Result};

use cartan::CartanData;
use weyl::{default_cap, GroupTable};
use zee::ZeeIndex;

/// A fully built type `C~n` context: Cartan data, the interned group table
/// up to the cap, and the graded index of the Bruhat ideal `Z`.
pub struct Session {
    table: GroupTable,
    zee: ZeeIndex,
}

impl Session {
    pub fn new(n: usize) -> Session {
        Session::with_cap(n, default_cap(n))
    }

    /// The cap is raised to at least `2n` so that the rotation subwords
    /// defining `Z` always fit in the table.
    pub fn with_cap(n: usize, cap: usize) -> Session {
        let table = GroupTable::build(CartanData::affine_c(n), cap.max(2 * n));
        let zee = ZeeIndex::build(&table);
        Session { table, zee }
    }

    pub fn n(&self) -> usize {
        self.table.rank()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn zee(&self) -> &ZeeIndex {
        &self.zee
    }
}
