use std::collections::BTreeSet;
use std::fmt;

use super::CatalogError;
use crate::search::{CertificateError, ExhaustionCertificate};

/// Orders at which no pattern of the given girth and symmetry factor exists,
/// each backed by a complete certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonExistenceReport {
    pub girth: u32,
    pub symmetry_factor: u32,
    pub orders: Vec<u32>,
}

impl NonExistenceReport {
    /// Fails with the first listed order that has no certificate.
    pub fn require(&self, orders: &[u32]) -> Result<(), CatalogError> {
        match orders.iter().find(|n| self.orders.binary_search(n).is_err()) {
            Some(&n) => Err(CatalogError::MissingCertificate(n)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for NonExistenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        write!(f, "{}", list.join(", "))
    }
}

/// Collects the orders proven empty for `(girth, b)`. Every certificate must
/// belong to that instance, be complete and internally consistent, and
/// record no accepted pattern.
pub fn non_existence_report(
    girth: u32,
    symmetry_factor: u32,
    certificates: &[ExhaustionCertificate],
) -> Result<NonExistenceReport, CatalogError> {
    let mut orders = BTreeSet::new();
    for cert in certificates {
        if cert.girth != girth || cert.symmetry_factor != symmetry_factor {
            return Err(CatalogError::ForeignCertificate {
                girth: cert.girth,
                b: cert.symmetry_factor,
                order: cert.order,
            });
        }
        if !cert.complete {
            return Err(CertificateError::Incomplete(cert.order).into());
        }
        cert.check_consistency()?;
        if cert.counts.leaves > 0 {
            return Err(CatalogError::NotExhausted(cert.order));
        }
        orders.insert(cert.order);
    }
    Ok(NonExistenceReport {
        girth,
        symmetry_factor,
        orders: orders.into_iter().collect(),
    })
}
