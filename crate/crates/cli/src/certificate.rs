//! JSON form of a Rauzy-loop certificate; field elements are coordinate
//! lists over the power basis of the generator, as exact rational strings.

use serde::{Deserialize, Serialize};
use systole_core::numfield::FieldElement;
use systole_core::rauzy::{
    apply_derivative, verify_translation_pieces, Piece, PseudoAnosovCertificate, Vertex,
};

use crate::error::CliError;
use crate::report::SCHEMA;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub minpoly: Vec<i64>,
    /// Isolating interval of the generator.
    pub interval: [String; 2],
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub schema: String,
    pub permutation: Vec<usize>,
    pub path: String,
    pub matrix: Vec<Vec<i64>>,
    pub charpoly: Vec<i64>,
    pub field: FieldRecord,
    pub dilatation: Vec<String>,
    pub dilatation_approx: f64,
    pub generator_approx: f64,
    pub stratum: String,
    pub lambda: Vec<Vec<String>>,
    pub tau: Vec<Vec<String>>,
    pub vertices: Vec<[Vec<String>; 2]>,
    /// Vertices under `(x, y) ↦ (x/α, α·y)` for the generator `α`.
    pub images: Vec<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces_verified: Option<bool>,
}

pub fn coords(x: &FieldElement) -> Vec<String> {
    x.coords().iter().map(|c| c.to_string()).collect()
}

fn vertex(v: &Vertex) -> [Vec<String>; 2] {
    [coords(&v.0), coords(&v.1)]
}

pub fn certificate_record(
    cert: &PseudoAnosovCertificate,
    pieces: Option<&[Piece]>,
) -> Result<CertificateRecord, CliError> {
    let images = apply_derivative(&cert.polygon.vertices, &cert.generator)?;
    let pieces_verified = match pieces {
        Some(table) => Some(verify_translation_pieces(
            &cert.polygon.vertices,
            &images,
            table,
        )?),
        None => None,
    };
    let (lo, hi) = cert.field.interval();
    Ok(CertificateRecord {
        schema: SCHEMA.to_string(),
        permutation: cert.rauzy_loop.base.bottom().to_vec(),
        path: cert.rauzy_loop.path_string(),
        matrix: cert.matrix.to_rows(),
        charpoly: cert.charpoly.descending(),
        field: FieldRecord {
            minpoly: cert.field.minpoly().descending(),
            interval: [lo.to_string(), hi.to_string()],
            approx: cert.field.root_f64(),
        },
        dilatation: coords(&cert.dilatation),
        dilatation_approx: cert.dilatation_f64(),
        generator_approx: cert.generator.to_f64(),
        stratum: cert.stratum().to_string(),
        lambda: cert.lambda.iter().map(coords).collect(),
        tau: cert.tau.iter().map(coords).collect(),
        vertices: cert.polygon.vertices.iter().map(vertex).collect(),
        images: images.iter().map(vertex).collect(),
        pieces_verified,
    })
}

/// Pieces file: `[[[1,2,3],[4,5,6]], ...]`, source then image indices.
pub fn parse_pieces(text: &str) -> Result<Vec<Piece>, serde_json::Error> {
    let raw: Vec<(Vec<usize>, Vec<usize>)> = serde_json::from_str(text)?;
    Ok(raw
        .into_iter()
        .map(|(source, image)| Piece { source, image })
        .collect())
}

impl CertificateRecord {
    pub fn table(&self) -> String {
        let mut out = format!(
            "permutation {:?}, path {}\nstratum {}, dilatation {:.10}\ncharpoly {}\n",
            self.permutation,
            self.path,
            self.stratum,
            self.dilatation_approx,
            crate::report::poly_text(&self.charpoly)
        );
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        let mut rows = vec![vec!["".to_string(), "lambda".into(), "tau".into()]];
        for (i, (l, t)) in self.lambda.iter().zip(&self.tau).enumerate() {
            rows.push(vec![
                format!("{}", i + 1),
                format!("({})", l.join(", ")),
                format!("({})", t.join(", ")),
            ]);
        }
        out.push_str(&crate::report::align(&rows));
        if let Some(ok) = self.pieces_verified {
            out.push_str(&format!("translation pieces verified: {ok}\n"));
        }
        out
    }
}
