use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A closed surface: the orientable S_g or the nonorientable N_k. N_0 is
/// rejected; sphere embeddings are always reported as S_0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceId {
    pub orientable: bool,
    pub genus: u32,
}

impl SurfaceId {
    pub fn orientable(genus: u32) -> Self {
        SurfaceId {
            orientable: true,
            genus,
        }
    }

    pub fn nonorientable(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::input(
                "N0 is not a surface here; use S0 for the sphere",
            ));
        }
        Ok(SurfaceId {
            orientable: false,
            genus,
        })
    }

    pub fn sphere() -> Self {
        Self::orientable(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    /// Surface with the given Euler characteristic and orientability.
    pub fn from_chi(chi: i64, orientable: bool) -> Result<Self> {
        if orientable {
            if chi > 2 || chi % 2 != 0 {
                return Err(Error::input(format!(
                    "no orientable surface has Euler characteristic {chi}"
                )));
            }
            Ok(Self::orientable(((2 - chi) / 2) as u32))
        } else {
            if chi > 1 {
                return Err(Error::input(format!(
                    "no nonorientable surface has Euler characteristic {chi}"
                )));
            }
            Self::nonorientable((2 - chi) as u32)
        }
    }

    /// Parses `S<g>` or `N<k>`.
    pub fn parse(tok: &str) -> Result<Self> {
        let mk = |rest: &str, orientable: bool| -> Result<SurfaceId> {
            let genus: u32 = rest
                .parse()
                .map_err(|_| Error::input(format!("bad surface spec `{tok}`")))?;
            if orientable {
                Ok(SurfaceId::orientable(genus))
            } else {
                SurfaceId::nonorientable(genus)
            }
        };
        if let Some(rest) = tok.strip_prefix('S') {
            mk(rest, true)
        } else if let Some(rest) = tok.strip_prefix('N') {
            mk(rest, false)
        } else {
            Err(Error::input(format!("bad surface spec `{tok}`")))
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            if self.orientable { 'S' } else { 'N' },
            self.genus
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_round_trip() {
        assert_eq!(SurfaceId::orientable(4).euler_characteristic(), -6);
        assert_eq!(
            SurfaceId::nonorientable(9).unwrap().euler_characteristic(),
            -7
        );
        assert_eq!(
            SurfaceId::from_chi(-6, true).unwrap(),
            SurfaceId::orientable(4)
        );
        assert!(SurfaceId::from_chi(-7, true).is_err());
        assert!(SurfaceId::nonorientable(0).is_err());
        assert_eq!(SurfaceId::parse("S0").unwrap(), SurfaceId::sphere());
        assert!(SurfaceId::parse("N0").is_err());
    }
}
