//! The block-compatible cocycle σ_r, Kubota's cocycle on SL₂, the twisted
//! cocycle τ_P and the cover group law.

use num_traits::{One, Signed, Zero};

use super::element::{Block, Mat2, StructuredElement};
use crate::arith::{hilbert, is_local_square, relevant_places, valuation, Place, Rational, Sign};
use crate::error::{bail, Result};

fn torus_sigma(t: &[Rational], h: &[Rational], v: Place) -> Result<Sign> {
    if t.len() != h.len() {
        bail!(Domain, "torus ranks differ: {} vs {}", t.len(), h.len());
    }
    let mut s = Sign::Plus;
    for i in 0..t.len() {
        for hj in &h[i + 1..] {
            s *= hilbert(&t[i], hj, v)?;
        }
    }
    Ok(s)
}

/// `x(m)`: lower-left entry if nonzero, else lower-right.
fn kubota_x(m: &Mat2) -> &Rational {
    if m.c.is_zero() {
        &m.d
    } else {
        &m.c
    }
}

/// Kubota's cocycle on `GL₂`: `(x(gh)/x(g), x(gh)/(x(h) det g))_v`.
fn kubota_gl2_at(g: &Mat2, h: &Mat2, v: Place) -> Result<Sign> {
    let gh = g.mul(h);
    let x = kubota_x(&gh);
    hilbert(&(x / kubota_x(g)), &(x / (kubota_x(h) * g.det())), v)
}

fn kubota_at(g: &Mat2, h: &Mat2, v: Place) -> Result<Sign> {
    for m in [g, h] {
        if !m.det().is_one() {
            bail!(Domain, "Kubota cocycle needs determinant one, got {m}");
        }
    }
    kubota_gl2_at(g, h, v)
}

/// Kubota's cocycle on `GL₂` at an odd prime or the real place.
pub fn kubota_gl2(g: &Mat2, h: &Mat2, v: Place) -> Result<Sign> {
    v.require_odd_or_real("Kubota cocycle")?;
    for m in [g, h] {
        if m.det().is_zero() {
            bail!(Domain, "{m} is singular");
        }
    }
    kubota_gl2_at(g, h, v)
}

/// Kubota's cocycle `(x(gh)/x(g), x(gh)/x(h))_v` on `SL₂`.
pub fn kubota_sl2(g: &Mat2, h: &Mat2, v: Place) -> Result<Sign> {
    v.require_odd_or_real("Kubota cocycle")?;
    kubota_at(g, h, v)
}

fn block_sigma(g: &Block, h: &Block, v: Place) -> Result<Sign> {
    if g.size() != h.size() {
        bail!(Unsupported, "mismatched block sizes {} and {}", g.size(), h.size());
    }
    if let (Some(x), Some(y)) = (g.diagonal(), h.diagonal()) {
        return torus_sigma(&x, &y, v);
    }
    if let (Some(x), Some(y)) = (g.as_mat2(), h.as_mat2()) {
        return kubota_gl2_at(&x, &y, v);
    }
    bail!(Unsupported, "no cocycle formula for blocks {g:?} and {h:?}")
}

/// σ at any place, including 2; the product formula needs every place.
pub(crate) fn sigma_any_place(g: &StructuredElement, h: &StructuredElement, v: Place) -> Result<Sign> {
    if g.rank() != h.rank() {
        bail!(Domain, "rank mismatch {} vs {}", g.rank(), h.rank());
    }
    if g.is_unipotent() || h.is_unipotent() {
        return Ok(Sign::Plus);
    }
    let (StructuredElement::BlockDiagonal(gb), StructuredElement::BlockDiagonal(hb)) = (g, h) else {
        unreachable!("non-unipotent elements are block diagonal");
    };
    if g.block_sizes() == h.block_sizes() {
        let mut s = Sign::Plus;
        for (x, y) in gb.iter().zip(hb) {
            s *= block_sigma(x, y, v)?;
        }
        for i in 0..gb.len() {
            for hj in &hb[i + 1..] {
                s *= hilbert(&gb[i].det(), &hj.det(), v)?;
            }
        }
        return Ok(s);
    }
    match (g.torus_entries(), h.torus_entries()) {
        (Some(t), Some(u)) => torus_sigma(&t, &u, v),
        _ => bail!(
            Unsupported,
            "block structures {:?} and {:?} do not match",
            g.block_sizes(),
            h.block_sizes()
        ),
    }
}

/// The block-compatible cocycle σ_r on the supported element classes.
pub fn sigma(g: &StructuredElement, h: &StructuredElement, v: Place) -> Result<Sign> {
    v.require_odd_or_real("metaplectic cocycle")?;
    sigma_any_place(g, h, v)
}

/// σ on a pair of central elements `a·I_r`, `b·I_r`: `(a, b)^{r(r-1)/2}`.
pub fn central_sigma(a: &Rational, b: &Rational, r: usize, v: Place) -> Result<Sign> {
    v.require_odd_or_real("metaplectic cocycle")?;
    Ok(hilbert(a, b, v)?.pow((r * (r.saturating_sub(1)) / 2) as u64))
}

fn require_even_torus(x: &StructuredElement, v: Place) -> Result<Vec<Rational>> {
    match x.torus_entries() {
        Some(t) if x.in_even_torus(v)? => Ok(t),
        _ => bail!(Precondition, "{x} is not in the even torus at {v}"),
    }
}

/// σ on the even torus through the reduced formula `∏_{i odd} (t_i, t'_i)`.
pub fn sigma_torus_even_reduced(t: &StructuredElement, h: &StructuredElement, v: Place) -> Result<Sign> {
    v.require_odd_or_real("metaplectic cocycle")?;
    let a = require_even_torus(t, v)?;
    let b = require_even_torus(h, v)?;
    if a.len() != b.len() {
        bail!(Domain, "rank mismatch {} vs {}", a.len(), b.len());
    }
    let mut s = Sign::Plus;
    for i in (0..a.len()).step_by(2) {
        s *= hilbert(&a[i], &b[i], v)?;
    }
    Ok(s)
}

/// Product of the local σ over all places where a factor can be nontrivial.
/// The product formula says this is `+1`.
pub fn global_sigma_product(g: &StructuredElement, h: &StructuredElement) -> Result<Sign> {
    let mut entries: Vec<Rational> = g.entries();
    entries.extend(h.entries());
    if let Ok(gh) = g.mul(h) {
        entries.extend(gh.entries());
    }
    let nonzero: Vec<&Rational> = entries.iter().filter(|x| !x.is_zero()).collect();
    let mut s = Sign::Plus;
    for v in relevant_places(&nonzero)? {
        s *= sigma_any_place(g, h, v)?;
    }
    Ok(s)
}

/// Whether `σ(g,h)σ(gh,k) = σ(g,hk)σ(h,k)`.
pub fn cocycle_identity_check(g: &StructuredElement, h: &StructuredElement, k: &StructuredElement, v: Place) -> Result<bool> {
    let gh = g.mul(h)?;
    let hk = h.mul(k)?;
    let lhs = sigma(g, h, v)? * sigma(&gh, k, v)?;
    let rhs = sigma(g, &hk, v)? * sigma(h, k, v)?;
    Ok(lhs == rhs)
}

/// Splitting of Kubota's cocycle over `GL₂(Z_p)`: `(c, d/det)_p` when
/// `cd ≠ 0` and `v_p(c)` is odd, `+1` otherwise. Trivial at the real place.
pub fn kubota_splitting(m: &Mat2, v: Place) -> Result<Sign> {
    let Place::Finite(p) = v else {
        return Ok(Sign::Plus);
    };
    if m.c.is_zero() || m.d.is_zero() || valuation(&m.c, p)?.rem_euclid(2) == 0 {
        return Ok(Sign::Plus);
    }
    hilbert(&m.c, &(&m.d / m.det()), v)
}

fn tau_block(g: &Block, h: &Block, v: Place) -> Result<Sign> {
    if let (Some(x), Some(y)) = (g.diagonal(), h.diagonal()) {
        return torus_sigma(&x, &y, v);
    }
    if let (Some(x), Some(y)) = (g.as_mat2(), h.as_mat2()) {
        let s = kubota_gl2_at(&x, &y, v)?;
        let xy = x.mul(&y);
        return Ok(s * kubota_splitting(&x, v)? * kubota_splitting(&y, v)? * kubota_splitting(&xy, v)?);
    }
    bail!(Unsupported, "no τ formula for blocks {g:?} and {h:?}")
}

/// The cocycle τ_P on block-diagonal elements of matching block type.
pub fn tau_p(m: &StructuredElement, h: &StructuredElement, v: Place) -> Result<Sign> {
    v.require_odd_or_real("metaplectic cocycle")?;
    let (StructuredElement::BlockDiagonal(mb), StructuredElement::BlockDiagonal(hb)) = (m, h) else {
        bail!(Unsupported, "τ_P needs block-diagonal arguments");
    };
    if m.block_sizes() != h.block_sizes() {
        bail!(Unsupported, "block types {:?} and {:?} differ", m.block_sizes(), h.block_sizes());
    }
    let mut s = Sign::Plus;
    for (x, y) in mb.iter().zip(hb) {
        s *= tau_block(x, y, v)?;
    }
    for i in 0..mb.len() {
        for hj in &hb[i + 1..] {
            s *= hilbert(&mb[i].det(), &hj.det(), v)?;
        }
    }
    Ok(s)
}

/// `e_i(g)`: the block-diagonal element with `g` in slot `i` and identity
/// blocks of the given sizes elsewhere.
pub fn embed_block(sizes: &[usize], i: usize, g: &Block) -> Result<StructuredElement> {
    if i >= sizes.len() || sizes[i] != g.size() {
        bail!(Domain, "block of size {} does not fit slot {i} of {sizes:?}", g.size());
    }
    let blocks = sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| if k == i { g.clone() } else { Block::identity(n) })
        .collect();
    StructuredElement::blocks(blocks)
}

/// Whether `e_i(g)` and `e_j(h)` commute in the cover defined by τ_P.
pub fn block_commutation(sizes: &[usize], i: usize, j: usize, g: &Block, h: &Block, v: Place) -> Result<bool> {
    if i == j {
        bail!(Domain, "block indices must differ");
    }
    let eg = embed_block(sizes, i, g)?;
    let eh = embed_block(sizes, j, h)?;
    Ok(tau_p(&eg, &eh, v)? == tau_p(&eh, &eg, v)?)
}

/// Commutation of embedded square-determinant blocks, together with the
/// homomorphism property of the block-product map on `(e_i(g)e_j(h))²`.
pub fn block_lemmas_check(sizes: &[usize], i: usize, j: usize, g: &Block, h: &Block, v: Place) -> Result<bool> {
    for (name, b) in [("g", g), ("h", h)] {
        if !is_local_square(&b.det(), v)? {
            bail!(Precondition, "det {name} = {} is not a square at {v}", b.det());
        }
    }
    if !block_commutation(sizes, i, j, g, h, v)? {
        return Ok(false);
    }
    let m = embed_block(sizes, i, g)?.mul(&embed_block(sizes, j, h)?)?;
    let StructuredElement::BlockDiagonal(blocks) = &m else {
        unreachable!("embedded blocks stay block diagonal");
    };
    let mut blockwise = Sign::Plus;
    for b in blocks {
        blockwise *= tau_block(b, b, v)?;
    }
    Ok(tau_p(&m, &m, v)? == blockwise)
}

/// An element of the double cover: `(g, ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverElement {
    pub element: StructuredElement,
    pub xi: Sign,
}

impl CoverElement {
    pub fn new(element: StructuredElement, xi: Sign) -> Self {
        CoverElement { element, xi }
    }

    /// `(g, ξ)(g', ξ') = (gg', σ(g, g') ξ ξ')`.
    pub fn mul(&self, other: &CoverElement, v: Place) -> Result<CoverElement> {
        let s = sigma(&self.element, &other.element, v)?;
        Ok(CoverElement {
            element: self.element.mul(&other.element)?,
            xi: s * self.xi * other.xi,
        })
    }
}

/// Sign of a nonzero rational, used by the real-place character oracles.
pub(crate) fn real_sign(x: &Rational) -> Sign {
    Sign::from_parity(x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn torus(v: &[i64]) -> StructuredElement {
        StructuredElement::torus(v.iter().map(|&n| int(n)).collect()).unwrap()
    }

    const P3: Place = Place::Finite(3);
    const P7: Place = Place::Finite(7);

    #[test]
    fn central_examples() {
        for (a, b) in [(3, 3), (2, 5), (-1, 3)] {
            assert_eq!(central_sigma(&int(a), &int(b), 4, P3).unwrap(), Sign::Plus);
        }
        assert_eq!(central_sigma(&int(3), &int(3), 2, P3).unwrap(), Sign::Minus);
        let z = StructuredElement::central(int(3), 2).unwrap();
        assert_eq!(sigma(&z, &z, P3).unwrap(), Sign::Minus);
    }

    #[test]
    fn torus_example() {
        assert_eq!(sigma(&torus(&[2, 3, 5]), &torus(&[7, 11, 13]), P7).unwrap(), Sign::Plus);
    }

    #[test]
    fn kubota_examples() {
        let id = Mat2::identity();
        assert_eq!(kubota_sl2(&id, &id, P3).unwrap(), Sign::Plus);
        assert_eq!(kubota_sl2(&Mat2::w(), &Mat2::w(), P3).unwrap(), Sign::Plus);
        for (a, b) in [(3, 3), (2, 3), (5, 7), (-1, -1)] {
            for v in [P3, Place::Finite(5), P7, Place::Real] {
                let k = kubota_sl2(&Mat2::t(int(a)), &Mat2::t(int(b)), v).unwrap();
                assert_eq!(k, hilbert(&int(a), &int(b), v).unwrap());
            }
        }
        assert!(kubota_sl2(&id, &id, Place::Finite(2)).is_err());
    }

    #[test]
    fn even_torus_reduction_examples() {
        for v in [P3, Place::Real] {
            assert_eq!(sigma_torus_even_reduced(&torus(&[4, 1, 9, 1]), &torus(&[4, 1, 9, 1]), v).unwrap(), Sign::Plus);
        }
        let t = torus(&[3, 3, 1, 1]);
        let full = sigma(&t, &t, P3).unwrap();
        assert_eq!(sigma_torus_even_reduced(&t, &t, P3).unwrap(), full);
        assert_eq!(full, Sign::Minus);
        assert!(sigma_torus_even_reduced(&torus(&[3, 1]), &torus(&[1, 1]), P3).is_err());
    }

    #[test]
    fn global_examples() {
        assert_eq!(global_sigma_product(&torus(&[2, 1]), &torus(&[1, 3])).unwrap(), Sign::Plus);
        let z = StructuredElement::central(int(-1), 3).unwrap();
        assert_eq!(global_sigma_product(&z, &z).unwrap(), Sign::Plus);
        let g = StructuredElement::sl2(Mat2::new(int(2), int(3), int(5), int(8))).unwrap();
        let h = StructuredElement::sl2(Mat2::new(int(7), rat(1, 3), int(6), rat(3, 7))).unwrap();
        assert_eq!(global_sigma_product(&g, &h).unwrap(), Sign::Plus);
    }

    #[test]
    fn unipotent_is_trivial() {
        let n = StructuredElement::unipotent_from_entries(3, &[(1, 3, int(7))]).unwrap();
        assert_eq!(sigma(&torus(&[3, 5, 7]), &n, P3).unwrap(), Sign::Plus);
        assert_eq!(sigma(&n, &torus(&[3, 5, 7]), P3).unwrap(), Sign::Plus);
    }

    #[test]
    fn mismatched_structures_are_rejected() {
        let g = StructuredElement::sl2(Mat2::w()).unwrap();
        let h = StructuredElement::blocks(vec![Block::Torus(vec![int(1)]), Block::Torus(vec![int(2)])]).unwrap();
        assert!(sigma(&g, &h, P3).is_err());
        assert!(sigma(&g, &g, Place::Finite(2)).is_err());
    }

    #[test]
    fn tau_examples() {
        let t = |v: &[i64]| StructuredElement::blocks(v.iter().map(|&n| Block::Torus(vec![int(n)])).collect()).unwrap();
        assert_eq!(tau_p(&t(&[3, 5, 2]), &t(&[3, 7, 3]), P3).unwrap(), sigma(&torus(&[3, 5, 2]), &torus(&[3, 7, 3]), P3).unwrap());
        let m = StructuredElement::blocks(vec![Block::Torus(vec![int(3), int(1)]), Block::Torus(vec![int(3), int(1)])]).unwrap();
        assert_eq!(tau_p(&m, &m, P3).unwrap(), hilbert(&int(3), &int(3), P3).unwrap());
    }

    #[test]
    fn block_lemma_examples() {
        let sizes = [2, 2];
        let g = Block::Gl2(Mat2::new(int(1), int(1), int(0), int(4)));
        let h = Block::Gl2(Mat2::new(int(3), int(0), int(1), int(3)));
        assert!(block_lemmas_check(&sizes, 0, 1, &g, &h, P3).unwrap());
        let g = Block::Torus(vec![int(9), int(1)]);
        let h = Block::Torus(vec![int(36), int(1)]);
        assert!(block_lemmas_check(&sizes, 0, 1, &g, &h, P3).unwrap());
        let g = Block::Torus(vec![int(3), int(1)]);
        let h = Block::Torus(vec![int(2), int(1)]);
        assert!(block_lemmas_check(&sizes, 0, 1, &g, &h, P3).is_err());
        assert!(!block_commutation(&sizes, 0, 1, &g, &h, P3).unwrap());
    }

    fn random_mat(rng: &mut impl rand::Rng, det_one: bool) -> Mat2 {
        loop {
            let mut e = || int(rng.gen_range(-9..=9));
            let (a, b, c) = (e(), e(), e());
            let m = if det_one {
                if a.is_zero() {
                    continue;
                }
                // d chosen so that ad - bc = 1
                let d = (int(1) + &b * &c) / &a;
                Mat2::new(a, b, c, d)
            } else {
                Mat2::new(a, b, c, e())
            };
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    #[test]
    fn kubota_gl2_is_a_cocycle() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for v in [P3, Place::Finite(5), P7, Place::Real] {
            for _ in 0..300 {
                let [g, h, k] = [0, 1, 2].map(|_| random_mat(&mut rng, false));
                let s = |x: &Mat2, y: &Mat2| kubota_gl2_at(x, y, v).unwrap();
                assert_eq!(s(&g, &h) * s(&g.mul(&h), &k), s(&g, &h.mul(&k)) * s(&h, &k), "{g} {h} {k} at {v}");
            }
        }
    }

    #[test]
    fn tau_is_trivial_on_integral_points() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [3u64, 5, 7] {
            let v = Place::Finite(p);
            let mut tested = 0;
            while tested < 300 {
                let g = random_mat(&mut rng, tested % 2 == 0);
                let h = random_mat(&mut rng, tested % 3 == 0);
                let unit_det = |m: &Mat2| valuation(&m.det(), p).unwrap() == 0;
                let integral = |m: &Mat2| [&m.a, &m.b, &m.c, &m.d].iter().all(|x| x.is_integer());
                if !(unit_det(&g) && unit_det(&h) && integral(&g) && integral(&h)) {
                    continue;
                }
                let e = |m: &Mat2| StructuredElement::gl2(m.clone()).unwrap();
                assert_eq!(tau_p(&e(&g), &e(&h), v).unwrap(), Sign::Plus, "{g} {h} at {p}");
                tested += 1;
            }
        }
    }

    #[test]
    fn cover_multiplication() {
        let t = CoverElement::new(StructuredElement::sl2(Mat2::t(int(3))).unwrap(), Sign::Plus);
        let tt = t.mul(&t, P3).unwrap();
        assert_eq!(tt.xi, Sign::Minus);
        assert_eq!(tt.element.matrix()[0][0], int(9));
    }
}
