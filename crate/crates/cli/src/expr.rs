//! Text syntax for structured elements:
//!
//! ```text
//! torus(2,3,5)            diagonal element
//! central(a,r)            a·I_r
//! identity(r)
//! sl2(a,b,c,d)            [[a, b], [c, d]], det 1
//! gl2(a,b,c,d)            [[a, b], [c, d]], invertible
//! unipotent(r; i,j,x; ...) upper unitriangular with entries x at (i, j)
//! blocks[B; B; ...]       block diagonal; B is torus(..), sl2(..),
//!                         gl2(..) or scalar(a,n)
//! ```

use metaplectic::arith::{parse_rational, Rational};
use metaplectic::cocycle::{Block, Mat2, StructuredElement};
use metaplectic::{Error, Result};

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn call(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| usage(format!("expected name(args) in {s:?}")))?;
    if !s.ends_with(')') {
        return Err(usage(format!("unbalanced parentheses in {s:?}")));
    }
    Ok((s[..open].trim(), &s[open + 1..s.len() - 1]))
}

fn rationals(args: &str) -> Result<Vec<Rational>> {
    args.split(',').map(parse_rational).collect()
}

fn count(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| usage(format!("expected a positive integer, got {s:?}")))
}

fn mat2(args: &str) -> Result<Mat2> {
    let v = rationals(args)?;
    let [a, b, c, d]: [Rational; 4] =
        v.try_into().map_err(|_| usage("a 2x2 matrix needs exactly four entries"))?;
    Ok(Mat2::new(a, b, c, d))
}

fn block(s: &str) -> Result<Block> {
    let (name, args) = call(s)?;
    Ok(match name {
        "torus" => Block::Torus(rationals(args)?),
        "sl2" => Block::Sl2(mat2(args)?),
        "gl2" => Block::Gl2(mat2(args)?),
        "scalar" => {
            let (a, n) = args.split_once(',').ok_or_else(|| usage("scalar(a,n) needs two arguments"))?;
            Block::Scalar { a: parse_rational(a)?, size: count(n)? }
        }
        _ => return Err(usage(format!("unknown block kind {name:?}"))),
    })
}

pub fn parse_element(s: &str) -> Result<StructuredElement> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("blocks") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| usage("blocks[...] needs square brackets"))?;
        let blocks = inner.split(';').map(block).collect::<Result<Vec<_>>>()?;
        return StructuredElement::blocks(blocks);
    }
    let (name, args) = call(s)?;
    match name {
        "torus" => StructuredElement::torus(rationals(args)?),
        "central" => {
            let (a, r) = args.split_once(',').ok_or_else(|| usage("central(a,r) needs two arguments"))?;
            StructuredElement::central(parse_rational(a)?, count(r)?)
        }
        "identity" => Ok(StructuredElement::identity(count(args)?)),
        "sl2" => StructuredElement::sl2(mat2(args)?),
        "gl2" => StructuredElement::gl2(mat2(args)?),
        "unipotent" => {
            let mut parts = args.split(';');
            let r = count(parts.next().unwrap_or(""))?;
            let mut entries = Vec::new();
            for p in parts {
                let f: Vec<&str> = p.split(',').collect();
                let [i, j, x] = f[..] else {
                    return Err(usage(format!("unipotent entry {p:?} must be i,j,x")));
                };
                entries.push((count(i)?, count(j)?, parse_rational(x)?));
            }
            StructuredElement::unipotent_from_entries(r, &entries)
        }
        _ => Err(usage(format!("unknown element kind {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use metaplectic::arith::{int, rat};

    #[test]
    fn parses_each_form() {
        assert_eq!(parse_element("torus(2,3,5)").unwrap().rank(), 3);
        assert_eq!(parse_element("central(-1, 4)").unwrap().central_value(), Some(int(-1)));
        assert_eq!(parse_element("identity(3)").unwrap(), StructuredElement::identity(3));
        let g = parse_element("sl2(2,3,5,8)").unwrap();
        assert_eq!(g.det(), int(1));
        assert!(parse_element("sl2(1,1,1,1)").is_err());
        let u = parse_element("unipotent(3; 1,3,7; 2,3,1/2)").unwrap();
        assert!(u.is_unipotent());
        assert_eq!(u.matrix()[1][2], rat(1, 2));
        let b = parse_element("blocks[torus(3,1); gl2(1,1,0,4); scalar(2,2)]").unwrap();
        assert_eq!(b.block_sizes(), vec![2, 2, 2]);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["torus", "torus(1,0)", "foo(1)", "blocks[torus(1)", "unipotent(3; 2,1,5)", "sl2(1,2,3)"] {
            assert!(parse_element(s).is_err(), "{s}");
        }
    }
}
