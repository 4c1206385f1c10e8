use std::io::Write;
use std::path::Path;

use crate::benchmarks::{Landscape, LandscapeKind};
use crate::potentials::{potential_profile, PotentialScheme, ProfileRow};
use crate::Result;

/// Rows of the profile table. On LeadingOnes they are ordered by fitness
/// `0..=n`; elsewhere by distance `0..=n`.
pub fn profile_rows(scheme: &PotentialScheme, landscape: &Landscape) -> Result<Vec<ProfileRow>> {
    let mut rows = potential_profile(scheme, landscape, 0..=landscape.n())?;
    if landscape.kind() == LandscapeKind::LeadingOnes {
        rows.reverse();
    }
    Ok(rows)
}

/// Writes `distance,potential`, or `fitness,expected_distance,potential` on
/// LeadingOnes where only the expected distance is known.
pub fn write_profile<W: Write>(w: W, landscape: &Landscape, rows: &[ProfileRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let lo = landscape.kind() == LandscapeKind::LeadingOnes;
    if lo {
        out.write_record(["fitness", "expected_distance", "potential"])?;
    } else {
        out.write_record(["distance", "potential"])?;
    }
    for r in rows {
        if lo {
            out.write_record([r.fitness.to_string(), r.distance.to_string(), r.potential.to_string()])?;
        } else {
            out.write_record([r.distance.to_string(), r.potential.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn emit_profile(scheme: &PotentialScheme, landscape: &Landscape, path: &Path) -> Result<Vec<ProfileRow>> {
    let rows = profile_rows(scheme, landscape)?;
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_profile(file, landscape, &rows)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn csv_of(scheme: PotentialScheme, landscape: &Landscape) -> Vec<Vec<String>> {
        let mut buf = Vec::new();
        write_profile(&mut buf, landscape, &profile_rows(&scheme, landscape).unwrap()).unwrap();
        String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn lin_hd_column_is_max_one_d() {
        let om = Landscape::one_max(100).unwrap();
        let t = csv_of(PotentialScheme::lin_hd(), &om);
        assert_eq!(t[0], ["distance", "potential"]);
        assert_eq!(t.len(), 102);
        for (d, row) in t[1..].iter().enumerate() {
            assert_eq!(row[0], d.to_string());
            assert_eq!(row[1], d.max(1).to_string());
        }
    }

    #[test]
    fn static_is_constant_and_expo_hd_ends_at_n() {
        let om = Landscape::one_max(100).unwrap();
        assert!(csv_of(PotentialScheme::fixed(), &om)[1..].iter().all(|r| r[1] == "100"));
        let t = csv_of(PotentialScheme::expo_hd(), &om);
        assert_eq!(t[101], ["100", "100"]);
        assert_eq!(t[1], ["0", "1"]);
    }

    #[test]
    fn leading_ones_table_uses_expected_distance() {
        let lo = Landscape::leading_ones(10).unwrap();
        let t = csv_of(PotentialScheme::expo_f(), &lo);
        assert_eq!(t[0], ["fitness", "expected_distance", "potential"]);
        assert_eq!(t[1], ["0", "5.5", "10"]);
        assert_eq!(t[11], ["10", "0", "1"]);
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let om = Landscape::one_max(4).unwrap();
        let err = emit_profile(&PotentialScheme::lin_hd(), &om, Path::new("/nonexistent/dir/p.csv")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
        assert_eq!(err.exit_code(), 3);
    }
}
