//! The sphere test behind 0-efficiency.
//!
//! A closed triangulation is 0-efficient when its only normal 2-spheres are
//! vertex links.  Any other sphere forces a vertex ray of positive Euler
//! characteristic to exist — either a sphere outright or a one-sided
//! projective plane whose double is a sphere — so it suffices to scan the
//! two vertex-ray censuses, always judging the two-sided representative of
//! each ray.  Quad rays are lifted through their canonical triangle
//! completion first.  Scanning both systems costs a second full enumeration
//! but closes the gap either single census leaves: a sphere without
//! quadrilaterals projects to nothing, and a quad vertex ray's completion is
//! only one surface in its standard-coordinate fibre.

use crate::enumerate::{enumerate_rays, vertex_surface};
use crate::normal::links::quad_to_standard;
use crate::normal::{
    build_complex, matching_system, recognize_link, CoordSystem, NormalError, NormalVector,
    SurfaceLink,
};
use crate::skeleton::properties;
use crate::tri::GluingTable;

pub fn is_zero_efficient(table: &GluingTable) -> Result<bool, NormalError> {
    let p = properties(table);
    if !p.valid {
        return Err(NormalError::InvalidTriangulation);
    }
    if !p.closed {
        return Err(NormalError::NotClosed);
    }

    let quad = matching_system(table, CoordSystem::Quad)?;
    for ray in &enumerate_rays(&quad).rays {
        let rep = vertex_surface(table, ray)?;
        if is_sphere(table, &quad_to_standard(table, &rep)?)? {
            return Ok(false);
        }
    }

    let standard = matching_system(table, CoordSystem::Standard)?;
    for ray in &enumerate_rays(&standard).rays {
        let rep = vertex_surface(table, ray)?;
        if is_sphere(table, &rep)?
            && !matches!(recognize_link(table, &rep), SurfaceLink::VertexLink(_))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_sphere(table: &GluingTable, standard: &NormalVector) -> Result<bool, NormalError> {
    let c = build_complex(table, standard)?;
    Ok(c.components == 1 && c.closed && c.euler == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::NormalVector;
    use crate::tri::parse_tri;

    const DOUBLED_TET: &str = "tets 2\n\
        1:123 1:023 1:013 1:012\n\
        0:123 0:023 0:013 0:012";

    #[test]
    fn the_doubled_tetrahedron_carries_a_central_sphere() {
        let t = parse_tri(DOUBLED_TET).unwrap();
        // the sphere separating the two tetrahedra, written down by hand
        let central = NormalVector::from_counts(CoordSystem::Quad, &[1, 0, 0, 1, 0, 0]).unwrap();
        let lift = quad_to_standard(&t, &central).unwrap();
        assert!(is_sphere(&t, &lift).unwrap());
        // it doubles as the thin link of the edges joining vertices 0 and 1,
        // but an edge link is still not a vertex link
        assert!(matches!(
            recognize_link(&t, &lift),
            SurfaceLink::ThinEdgeLink(_)
        ));
        assert_eq!(is_zero_efficient(&t), Ok(false));
    }

    #[test]
    fn bounded_and_invalid_inputs_are_refused() {
        let ball = parse_tri("tets 1\nbdry bdry bdry bdry").unwrap();
        assert_eq!(is_zero_efficient(&ball), Err(NormalError::NotClosed));

        // face 0 glued to face 1 folding edge {2,3} back on itself
        let reversed = parse_tri("tets 1\n0:032 0:132 bdry bdry").unwrap();
        assert_eq!(
            is_zero_efficient(&reversed),
            Err(NormalError::InvalidTriangulation)
        );
    }
}
