use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{AfdmError, Result};

/// Square Gray-coded constellation sizes supported by the mapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QamOrder {
    Qpsk,
    Qam16,
}

impl QamOrder {
    pub fn from_order(order: u32) -> Result<Self> {
        match order {
            4 => Ok(QamOrder::Qpsk),
            16 => Ok(QamOrder::Qam16),
            _ => Err(AfdmError::Config(format!("unsupported QAM order {order}, expected 4 or 16"))),
        }
    }

    pub fn order(self) -> u32 {
        match self {
            QamOrder::Qpsk => 4,
            QamOrder::Qam16 => 16,
        }
    }

    pub fn bits_per_symbol(self) -> usize {
        match self {
            QamOrder::Qpsk => 2,
            QamOrder::Qam16 => 4,
        }
    }

    /// Every constellation point, indexed by its bit label (MSB first).
    pub fn constellation(self) -> Vec<Complex64> {
        let k = self.bits_per_symbol();
        (0..1u32 << k)
            .map(|label| {
                let bits: Vec<u8> = (0..k).rev().map(|i| ((label >> i) & 1) as u8).collect();
                self.point(&bits)
            })
            .collect()
    }

    fn point(self, bits: &[u8]) -> Complex64 {
        let sign = |b: u8| 1.0 - 2.0 * b as f64;
        match self {
            // 00 -> (1 + j)/sqrt(2)
            QamOrder::Qpsk => Complex64::new(sign(bits[0]), sign(bits[1])) * FRAC_1_SQRT_2,
            // Per axis: sign bit then magnitude bit, levels 01->3, 00->1, 10->-1, 11->-3.
            QamOrder::Qam16 => {
                let level = |s: u8, m: u8| sign(s) * (1.0 + 2.0 * m as f64);
                Complex64::new(level(bits[0], bits[1]), level(bits[2], bits[3])) / 10f64.sqrt()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBlock {
    pub bits: Vec<u8>,
    pub bits_per_symbol: usize,
}

impl BitBlock {
    pub fn new(bits: Vec<u8>, bits_per_symbol: usize) -> Result<Self> {
        if bits_per_symbol == 0 || bits.len() % bits_per_symbol != 0 {
            return Err(AfdmError::InputShape(format!(
                "{} bits do not split into {bits_per_symbol}-bit symbols",
                bits.len()
            )));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(AfdmError::InputShape("bits must be 0 or 1".into()));
        }
        Ok(BitBlock { bits, bits_per_symbol })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

pub fn qam_map(bits: &BitBlock, order: QamOrder) -> Result<Vec<Complex64>> {
    if bits.bits_per_symbol != order.bits_per_symbol() {
        return Err(AfdmError::InputShape(format!(
            "{}-QAM needs {} bits per symbol, block has {}",
            order.order(),
            order.bits_per_symbol(),
            bits.bits_per_symbol
        )));
    }
    Ok(bits.bits.chunks(order.bits_per_symbol()).map(|c| order.point(c)).collect())
}

/// Minimum-distance hard decision.
pub fn qam_demap(symbols: &[Complex64], order: QamOrder) -> BitBlock {
    let points = order.constellation();
    let k = order.bits_per_symbol();
    let mut bits = Vec::with_capacity(symbols.len() * k);
    for s in symbols {
        let label = points
            .iter()
            .enumerate()
            .min_by(|a, b| (s - a.1).norm_sqr().total_cmp(&(s - b.1).norm_sqr()))
            .map(|(i, _)| i)
            .unwrap();
        bits.extend((0..k).rev().map(|i| ((label >> i) & 1) as u8));
    }
    BitBlock { bits, bits_per_symbol: k }
}

/// Hamming distance.
pub fn count_errors(tx: &BitBlock, rx: &BitBlock) -> Result<u64> {
    if tx.len() != rx.len() {
        return Err(AfdmError::InputShape(format!("bit blocks differ in length: {} vs {}", tx.len(), rx.len())));
    }
    Ok(tx.bits.iter().zip(&rx.bits).filter(|(a, b)| a != b).count() as u64)
}
