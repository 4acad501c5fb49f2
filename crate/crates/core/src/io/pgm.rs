//! Binary 8-bit PGM (P5).

use crate::error::{Error, Result};

/// Encodes an 8-bit grayscale raster as binary PGM.
pub fn encode_pgm(width: usize, height: usize, data: &[u8]) -> Vec<u8> {
    debug_assert_eq!(data.len(), width * height);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(data);
    out
}

/// Decodes a binary PGM with `maxval <= 255`; values are rescaled to `0..=255`.
pub fn decode_pgm(bytes: &[u8]) -> Result<(usize, usize, Vec<u8>)> {
    let mut pos = 0usize;
    let magic = next_token(bytes, &mut pos)?;
    if magic != b"P5" {
        return Err(Error::Parse("not a binary PGM (missing P5 magic)".into()));
    }
    let width = parse_usize(next_token(bytes, &mut pos)?)?;
    let height = parse_usize(next_token(bytes, &mut pos)?)?;
    let maxval = parse_usize(next_token(bytes, &mut pos)?)?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse(format!("unsupported PGM maxval {maxval}")));
    }
    crate::imaging::image::check_dims(width, height)?;
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let n = width * height;
    let raster = bytes
        .get(pos..pos.saturating_add(n))
        .ok_or_else(|| Error::Parse(format!("PGM raster truncated: need {n} bytes")))?;
    let data = if maxval == 255 {
        raster.to_vec()
    } else {
        raster
            .iter()
            .map(|&b| ((b.min(maxval as u8) as usize * 255 + maxval / 2) / maxval) as u8)
            .collect()
    };
    Ok((width, height, data))
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse("unexpected end of PGM header".into()));
    }
    Ok(&bytes[start..*pos])
}

fn parse_usize(tok: &[u8]) -> Result<usize> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad PGM header field {:?}", String::from_utf8_lossy(tok))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_layout() {
        let bytes = encode_pgm(2, 1, &[0, 255]);
        assert_eq!(bytes, b"P5\n2 1\n255\n\x00\xff");
    }

    #[test]
    fn decode_with_comments_and_maxval() {
        let mut bytes = b"P5\n# made by hand\n3 1\n# another\n15\n".to_vec();
        bytes.extend_from_slice(&[0, 15, 5]);
        let (w, h, d) = decode_pgm(&bytes).unwrap();
        assert_eq!((w, h), (3, 1));
        assert_eq!(d, vec![0, 255, 85]);
    }

    #[test]
    fn decode_errors() {
        assert!(decode_pgm(b"P2\n1 1\n255\n0").is_err());
        assert!(decode_pgm(b"P5\n4 4\n255\n\x00").is_err());
        assert!(decode_pgm(b"P5\n1 1\n65535\n\x00\x00").is_err());
    }
}
