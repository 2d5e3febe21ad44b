use crate::exactnum::Int;
use crate::format::parse_table;
use crate::tables::{equivalent, ExactMatrix};

/// Where a known table appears.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Listing {
    /// Displayed in a classification statement.
    Statement,
    /// Derived only inside a proof.
    ProofOnly,
    /// A candidate the text rules out.
    NegativeControl,
}

impl Listing {
    pub fn name(self) -> &'static str {
        match self {
            Listing::Statement => "statement",
            Listing::ProofOnly => "proof only",
            Listing::NegativeControl => "negative control",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry<T: Int> {
    pub name: String,
    pub table: ExactMatrix<T>,
    pub scheme_tag: Option<String>,
    pub integral_fourier: bool,
    pub listing: Listing,
    /// For negative controls: the check the text says must fail.
    pub expected_failure: Option<String>,
}

impl<T: Int> CatalogEntry<T> {
    pub fn is_negative(&self) -> bool {
        self.listing == Listing::NegativeControl
    }

    pub fn tag(&self) -> String {
        format!("{} ({})", self.name, self.listing.name())
    }
}

fn eigen<T: Int>(disc: Option<i64>, rows: &[&str]) -> ExactMatrix<T> {
    let mut text = format!("rank {}", rows.len());
    if let Some(d) = disc {
        text.push_str(&format!(" disc {d}"));
    }
    text.push_str(" role eigen\n");
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    parse_table(&text).expect("catalog fixture parses")
}

fn entry<T: Int>(
    name: &str,
    table: ExactMatrix<T>,
    scheme_tag: Option<&str>,
    integral_fourier: bool,
    listing: Listing,
    expected_failure: Option<&str>,
) -> CatalogEntry<T> {
    CatalogEntry {
        name: name.into(),
        table,
        scheme_tag: scheme_tag.map(String::from),
        integral_fourier,
        listing,
        expected_failure: expected_failure.map(String::from),
    }
}

/// The rank-5 table with second row `[1,1,-2,-2,2]`, presented separately
/// from the three displayed rank-5 tables.
pub fn separate_rank5_table<T: Int>() -> ExactMatrix<T> {
    eigen(
        Some(2),
        &[
            "1 1 2 2 2",
            "1 1 -2 -2 2",
            "1 -1 r -r 0",
            "1 -1 -r r 0",
            "1 1 0 0 -2",
        ],
    )
}

/// Built-in fixtures: every known table up to rank 5 plus the
/// candidates the text rejects.
pub fn catalog<T: Int>() -> Vec<CatalogEntry<T>> {
    use Listing::*;
    vec![
        entry(
            "rank2-[1,1]",
            eigen(None, &["1 1", "1 -1"]),
            None,
            true,
            Statement,
            None,
        ),
        entry(
            "rank3-[1,1,2]",
            eigen(None, &["1 1 2", "1 1 -2", "1 -1 0"]),
            Some("as4(2)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank3-Z3",
            eigen(
                Some(-3),
                &[
                    "1 1 1",
                    "1 -1/2+1/2*r -1/2-1/2*r",
                    "1 -1/2-1/2*r -1/2+1/2*r",
                ],
            ),
            None,
            false,
            Statement,
            None,
        ),
        entry(
            "rank3-[1,1,2]-u1",
            eigen(
                Some(17),
                &[
                    "1 1 2",
                    "1 -3/4+1/4*r -1/4-1/4*r",
                    "1 -3/4-1/4*r -1/4+1/4*r",
                ],
            ),
            None,
            false,
            NegativeControl,
            Some("multiplicity_equals_degree"),
        ),
        entry(
            "rank4-[1,1,2,2]",
            eigen(None, &["1 1 2 2", "1 -1 2 -2", "1 1 -1 -1", "1 -1 -1 1"]),
            Some("as6(5)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank4-[1,1,2,4]",
            eigen(None, &["1 1 2 4", "1 1 2 -4", "1 1 -2 0", "1 -1 0 0"]),
            Some("as8(4)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank4-[1,1,4,6]",
            eigen(None, &["1 1 4 6", "1 1 4 -6", "1 1 -2 0", "1 -1 0 0"]),
            Some("as12(8)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank4-[1,1,4,2]",
            eigen(None, &["1 1 4 2", "1 1 -4 2", "1 -1 0 0", "1 1 0 -2"]),
            None,
            false,
            ProofOnly,
            None,
        ),
        entry(
            "rank4-[1,1,6,4]",
            eigen(None, &["1 1 6 4", "1 1 -6 4", "1 -1 0 0", "1 1 0 -2"]),
            None,
            false,
            ProofOnly,
            None,
        ),
        entry(
            "rank5-[1,1,2,2,2]",
            eigen(
                Some(2),
                &[
                    "1 1 2 2 2",
                    "1 1 2 -2 -2",
                    "1 1 -2 0 0",
                    "1 -1 0 r -r",
                    "1 -1 0 -r r",
                ],
            ),
            Some("as08(10)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank5-[1,1,2,4,8]",
            eigen(
                None,
                &[
                    "1 1 2 4 8",
                    "1 1 2 4 -8",
                    "1 1 2 -4 0",
                    "1 1 -2 0 0",
                    "1 -1 0 0 0",
                ],
            ),
            Some("as16(24)"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank5-[1,1,4,3,3]",
            eigen(
                Some(3),
                &[
                    "1 1 4 3 3",
                    "1 1 4 -3 -3",
                    "1 1 -2 0 0",
                    "1 -1 0 r -r",
                    "1 -1 0 -r r",
                ],
            ),
            Some("order-12 non-scheme"),
            false,
            Statement,
            None,
        ),
        entry(
            "rank5-P1",
            eigen(
                None,
                &[
                    "1 1 4 12 18",
                    "1 1 4 12 -18",
                    "1 1 4 -6 0",
                    "1 1 1 -3 0",
                    "1 -1 0 0 0",
                ],
            ),
            None,
            false,
            NegativeControl,
            Some("allen_entries_algebraic_integer"),
        ),
        entry(
            "rank5-P2",
            eigen(
                None,
                &[
                    "1 1 4 12 18",
                    "1 1 4 12 -18",
                    "1 1 -5 3 0",
                    "1 1 1 -3 0",
                    "1 -1 0 0 0",
                ],
            ),
            None,
            false,
            NegativeControl,
            Some("allen_entries_algebraic_integer"),
        ),
        entry(
            "rank5-P3",
            eigen(
                None,
                &[
                    "1 1 4 12 18",
                    "1 1 4 12 -18",
                    "1 1 4 -6 0",
                    "1 1 -2 0 0",
                    "1 -1 0 0 0",
                ],
            ),
            None,
            false,
            NegativeControl,
            Some("allen_integrality"),
        ),
        entry(
            "rank5-P4",
            eigen(
                None,
                &[
                    "1 1 4 12 18",
                    "1 1 4 12 -18",
                    "1 1 -5 3 0",
                    "1 1 -2 0 0",
                    "1 -1 0 0 0",
                ],
            ),
            None,
            false,
            NegativeControl,
            Some("allen_entries_algebraic_integer"),
        ),
    ]
}

/// First catalog entry canonically equivalent to `p`.
pub fn catalog_match<'a, T: Int>(
    entries: &'a [CatalogEntry<T>],
    p: &ExactMatrix<T>,
) -> Option<&'a CatalogEntry<T>> {
    entries.iter().find(|e| equivalent(&e.table, p))
}
