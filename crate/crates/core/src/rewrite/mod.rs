//! Words over indexed subgroup families, derivation certificates, the
//! certificate checker, commutator rearrangers, homomorphism transport, and
//! the exhaustive minimal-area oracle.

pub mod bfs;
pub mod builder;
pub mod cert;
pub mod comm;
pub mod transport;
pub mod word;

pub use bfs::{bfs_min_area, BfsCaps};
pub use builder::{EquationCert, RewriteBuilder};
pub use cert::{
    cert_stats, check_certificate, count_applies, decode_element, CertStats, CertificateFile,
    DerivationCertificate, Step, Verdict,
};
pub use comm::{collect_commutators, commutator_word, drag, CollectOracles};
pub use transport::{transport, transport_through_padding};
pub use word::{concat, eval, invert_word, is_relator, Letter, MoatFamily, Word};
